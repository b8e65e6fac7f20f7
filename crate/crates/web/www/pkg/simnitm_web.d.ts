/* tslint:disable */
/* eslint-disable */

/**
 * A physical solution with its profiles as flat arrays.
 */
export class Solution {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    d2f(): Float64Array;
    df(): Float64Array;
    eta(): Float64Array;
    f(): Float64Array;
    readonly d2f0: number;
    readonly eta_inf: number;
    readonly f0: number;
    readonly lambda: number;
    readonly p: number;
}

/**
 * `(P, f''(0))` pairs, interleaved, for `n` star parameters spread over
 * `[lo, hi]` on a sinh scale. Failed solves are skipped.
 */
export function branch(sign: number, lo: number, hi: number, n: number): Float64Array;

/**
 * `[P_c, P*, f''(0)]` at the fold of the upper moving-wall branch.
 */
export function critical(): Float64Array;

/**
 * Plain-text invariance report for a family.
 */
export function invariance(family: string): string;

/**
 * Solves one problem. `family` is `moving-wall` or `gasification`.
 */
export function solve(family: string, p_star: number, sign: number): Solution;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_solution_free: (a: number, b: number) => void;
    readonly branch: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly critical: () => [number, number, number, number];
    readonly invariance: (a: number, b: number) => [number, number, number, number];
    readonly solution_d2f: (a: number) => [number, number];
    readonly solution_d2f0: (a: number) => number;
    readonly solution_df: (a: number) => [number, number];
    readonly solution_eta: (a: number) => [number, number];
    readonly solution_eta_inf: (a: number) => number;
    readonly solution_f: (a: number) => [number, number];
    readonly solution_f0: (a: number) => number;
    readonly solution_lambda: (a: number) => number;
    readonly solution_p: (a: number) => number;
    readonly solve: (a: number, b: number, c: number, d: number) => [number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;

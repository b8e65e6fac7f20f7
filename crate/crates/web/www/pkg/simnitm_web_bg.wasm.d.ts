/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_solution_free: (a: number, b: number) => void;
export const branch: (a: number, b: number, c: number, d: number) => [number, number, number, number];
export const critical: () => [number, number, number, number];
export const invariance: (a: number, b: number) => [number, number, number, number];
export const solution_d2f: (a: number) => [number, number];
export const solution_d2f0: (a: number) => number;
export const solution_df: (a: number) => [number, number];
export const solution_eta: (a: number) => [number, number];
export const solution_eta_inf: (a: number) => number;
export const solution_f: (a: number) => [number, number];
export const solution_f0: (a: number) => number;
export const solution_lambda: (a: number) => number;
export const solution_p: (a: number) => number;
export const solve: (a: number, b: number, c: number, d: number) => [number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __wbindgen_start: () => void;

/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const mean_field: (a: number) => [number, number, number, number];
export const rate_curve: (a: number, b: number) => [number, number, number, number];
export const saddle_point: (a: number, b: number) => [number, number, number, number];
export const sample_components: (a: number, b: number, c: bigint) => [number, number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;

/* tslint:disable */
/* eslint-disable */

/**
 * `[ρ*, s_∞, ρ_∞, Θ_∞, forest rate]` for one `α`.
 */
export function mean_field(a: number): Float64Array;

/**
 * `Φ(ρ, α)` at `ρ = i / steps` for `i = 0..=steps`.
 */
export function rate_curve(a: number, steps: number): Float64Array;

/**
 * `[s_r, ρ_r, Θ_r, proxy rate]` at cutoff `r`.
 */
export function saddle_point(a: number, r: number): Float64Array;

/**
 * Component sizes of one `G(n, α/n)` sample, largest first.
 */
export function sample_components(n: number, a: number, seed: bigint): Uint32Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly mean_field: (a: number) => [number, number, number, number];
    readonly rate_curve: (a: number, b: number) => [number, number, number, number];
    readonly saddle_point: (a: number, b: number) => [number, number, number, number];
    readonly sample_components: (a: number, b: number, c: bigint) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
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

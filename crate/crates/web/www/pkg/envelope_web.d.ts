/* tslint:disable */
/* eslint-disable */

/**
 * Fermionic filling: `[Q_φ, ν, λ]` followed by `[n, l, occupancy,
 * capacity]` for each occupied level.
 */
export function fermion_filling(particles: number, dim: number, degeneracy: number, phi: number): Float64Array;

/**
 * Bosonic ground state of `n` particles of mass `mass` with pair potential
 * `sgn(β)·strength·r^β`, for each `β`: rows `[β, E_ET, E_IET, φ]`.
 */
export function identical_beta_scan(n: number, mass: number, strength: number, betas: Float64Array): Float64Array;

/**
 * Ground state of two massless particles plus a third with springs `r²`
 * and `κ r²`: rows `[κ, E_ET, E_IET, φ_a, φ_b]`.
 */
export function kappa_scan(kappas: Float64Array): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly fermion_filling: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly identical_beta_scan: (a: number, b: number, c: number, d: number, e: number) => [number, number];
    readonly kappa_scan: (a: number, b: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
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

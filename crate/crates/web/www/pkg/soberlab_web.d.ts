/* tslint:disable */
/* eslint-disable */

/**
 * Full analysis of a finite space given as a space file: properties, the
 * Hasse diagram of its open sets, the sobrification with its checks, R(X),
 * and the filter correspondence.
 */
export function analyze_space(input: string): string;

/**
 * The descending chain of compact saturated sets with empty intersection,
 * checked up to `j_max`.
 */
export function counterexample_json(family: string, j_max: bigint): string;

/**
 * Answers one predicate on a symbolic family (`cofinite` or `upper`).
 */
export function symbolic_query_json(family: string, predicate: string, set: string): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly analyze_space: (a: number, b: number) => [number, number];
    readonly counterexample_json: (a: number, b: number, c: bigint) => [number, number];
    readonly symbolic_query_json: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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

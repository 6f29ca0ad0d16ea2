/* tslint:disable */
/* eslint-disable */

export class Solution {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly center_x: number;
    readonly center_y: number;
    /**
     * Number of ghost trajectories drawn (approximation only).
     */
    readonly ghosts: number;
    readonly radius: number;
    readonly svg: string;
    readonly trajectories: number;
}

export function monster_text(n: number): string;

export function solve_approx(text: string, eps: number, rho: number, show_ghosts: boolean): Solution;

export function solve_exact(text: string, raise_overlaps: boolean): Solution;

/**
 * `remove` < 0 keeps every trajectory.
 */
export function solve_monster(n: number, remove: number, raise_overlaps: boolean): Solution;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_solution_free: (a: number, b: number) => void;
    readonly monster_text: (a: number) => [number, number, number, number];
    readonly solution_center_x: (a: number) => number;
    readonly solution_center_y: (a: number) => number;
    readonly solution_ghosts: (a: number) => number;
    readonly solution_radius: (a: number) => number;
    readonly solution_svg: (a: number) => [number, number];
    readonly solution_trajectories: (a: number) => number;
    readonly solve_approx: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
    readonly solve_exact: (a: number, b: number, c: number) => [number, number, number];
    readonly solve_monster: (a: number, b: number, c: number) => [number, number, number];
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

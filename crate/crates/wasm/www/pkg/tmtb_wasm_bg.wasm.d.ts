/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_solution_free: (a: number, b: number) => void;
export const monster_text: (a: number) => [number, number, number, number];
export const solution_center_x: (a: number) => number;
export const solution_center_y: (a: number) => number;
export const solution_ghosts: (a: number) => number;
export const solution_radius: (a: number) => number;
export const solution_svg: (a: number) => [number, number];
export const solution_trajectories: (a: number) => number;
export const solve_approx: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
export const solve_exact: (a: number, b: number, c: number) => [number, number, number];
export const solve_monster: (a: number, b: number, c: number) => [number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __wbindgen_start: () => void;

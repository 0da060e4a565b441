/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_gasession_free: (a: number, b: number) => void;
export const gasession_advance: (a: number, b: number) => [number, number];
export const gasession_certificate: (a: number) => [number, number];
export const gasession_history: (a: number) => [number, number];
export const gasession_new: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number];
export const gasession_state: (a: number) => [number, number];
export const replay: (a: number, b: number) => [number, number, number, number];
export const scramble: (a: number, b: number, c: number, d: number) => [number, number, number, number];
export const whitehead: (a: number, b: number, c: number) => [number, number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_start: () => void;

/* tslint:disable */
/* eslint-disable */

/**
 * A genetic search stepped from the page.
 */
export class GaSession {
    free(): void;
    [Symbol.dispose](): void;
    advance(generations: number): string;
    certificate(): string | undefined;
    /**
     * Best fitness of each generation so far.
     */
    history(): Float64Array;
    constructor(presentation: string, seed: number, fitness: string, population: number);
    state(): string;
}

export function replay(certificate: string): string;

export function scramble(presentation: string, length: number, seed: number): string;

export function whitehead(words: string, independent: boolean): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_gasession_free: (a: number, b: number) => void;
    readonly gasession_advance: (a: number, b: number) => [number, number];
    readonly gasession_certificate: (a: number) => [number, number];
    readonly gasession_history: (a: number) => [number, number];
    readonly gasession_new: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number];
    readonly gasession_state: (a: number) => [number, number];
    readonly replay: (a: number, b: number) => [number, number, number, number];
    readonly scramble: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly whitehead: (a: number, b: number, c: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
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

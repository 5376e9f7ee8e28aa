import { describe, expect, it } from 'vitest';

import { createNdjsonParser } from '../src/ndjson.js';

describe('ndjson parser', () => {
  it('parses complete lines', () => {
    const frames: unknown[] = [];
    const parser = createNdjsonParser((f) => frames.push(f));
    parser.push('{"a":1}\n{"b":2}\n');
    expect(frames).toEqual([{ a: 1 }, { b: 2 }]);
  });

  it('handles frames split across chunks', () => {
    const frames: unknown[] = [];
    const parser = createNdjsonParser((f) => frames.push(f));
    parser.push('{"type":"del');
    parser.push('ta","text":"hi"}\n{"type":"do');
    parser.push('ne"}\n');
    expect(frames).toEqual([
      { type: 'delta', text: 'hi' },
      { type: 'done' },
    ]);
  });

  it('flush emits a trailing frame without newline', () => {
    const frames: unknown[] = [];
    const parser = createNdjsonParser((f) => frames.push(f));
    parser.push('{"x":true}');
    expect(frames).toEqual([]);
    parser.flush();
    expect(frames).toEqual([{ x: true }]);
  });

  it('ignores blank lines', () => {
    const frames: unknown[] = [];
    const parser = createNdjsonParser((f) => frames.push(f));
    parser.push('\n\n{"ok":1}\n\n');
    expect(frames).toEqual([{ ok: 1 }]);
  });
});

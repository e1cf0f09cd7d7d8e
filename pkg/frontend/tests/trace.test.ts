import { describe, expect, it } from 'vitest';

import { TraceFormatError, parseTrace } from '../src/trace.js';
import { fixture } from './helpers.js';

describe('parseTrace', () => {
  it('parses a final trace with contiguous indices', () => {
    const t = parseTrace(fixture('insert.jsonl'));
    expect(t.schemaVersion).toBe(1);
    expect(t.status).toBe('final');
    expect(t.error).toBeNull();
    expect(t.steps.map(s => s.index)).toEqual(
      t.steps.map((_, i) => i));
    expect(t.steps[0].display).toBe('insert 3 [1, 2, 4]');
    expect(t.steps[0].kind).toBeNull();
    expect(t.steps[t.steps.length - 1].kind).toBe('final');
    expect(t.steps[t.steps.length - 1].display).toBe('[1, 2, 3, 4]');
  });

  it('parses a suspended trace', () => {
    const t = parseTrace(fixture('repeat_cyclic.jsonl'));
    expect(t.status).toBe('suspended');
    expect(t.steps[t.steps.length - 1].kind).toBe('continue');
    expect(t.steps[t.steps.length - 1].text).toBe('continue?');
  });

  it('parses a truncated trace', () => {
    const t = parseTrace(fixture('repeat_unfold.jsonl'));
    expect(t.status).toBe('truncated');
    expect(t.steps.length).toBe(5);
  });

  it('rejects garbage and wrong versions', () => {
    expect(() => parseTrace('')).toThrow(TraceFormatError);
    expect(() => parseTrace('not json')).toThrow(TraceFormatError);
    expect(() => parseTrace('{"record":"step"}')).toThrow(TraceFormatError);
    expect(() => parseTrace(
      '{"record":"trace","schema_version":2}\n'
      + '{"record":"status","status":"final","step_count":0,"error":null}',
    )).toThrow(/schema version/);
  });
});

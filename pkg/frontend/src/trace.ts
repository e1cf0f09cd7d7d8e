// Structured trace wire format (JSON lines, schema version 1).
// Field names here mirror the producer's contract; see the top-level README.

export interface TraceStep {
  index: number;
  display: string;
  depth: number;
  kind: 'equation' | 'primitive' | 'binding' | 'continue' | 'final' | null;
  text: string | null;
}

export type TraceStatus = 'final' | 'truncated' | 'suspended' | 'error';

export interface ParsedTrace {
  schemaVersion: number;
  steps: TraceStep[];
  status: TraceStatus;
  error: string | null;
}

export class TraceFormatError extends Error {}

export function parseTrace(jsonLines: string): ParsedTrace {
  const lines = jsonLines.split('\n').filter(l => l.trim() !== '');
  if (lines.length === 0) throw new TraceFormatError('empty trace');
  const records = lines.map((line, i) => {
    try {
      return JSON.parse(line) as Record<string, unknown>;
    } catch {
      throw new TraceFormatError(`line ${i + 1} is not JSON`);
    }
  });

  const header = records[0];
  if (header.record !== 'trace' || typeof header.schema_version !== 'number') {
    throw new TraceFormatError('missing trace header');
  }
  if (header.schema_version !== 1) {
    throw new TraceFormatError(
      `unsupported schema version ${header.schema_version}`);
  }

  const footer = records[records.length - 1];
  if (footer.record !== 'status') {
    throw new TraceFormatError('missing status footer');
  }

  const steps: TraceStep[] = [];
  for (const r of records.slice(1, -1)) {
    if (r.record !== 'step') throw new TraceFormatError('unexpected record');
    const step: TraceStep = {
      index: r.index as number,
      display: r.display as string,
      depth: r.depth as number,
      kind: (r.kind ?? null) as TraceStep['kind'],
      text: (r.text ?? null) as string | null,
    };
    if (step.index !== steps.length) {
      throw new TraceFormatError('step indices are not contiguous');
    }
    steps.push(step);
  }
  if (steps.length !== (footer.step_count as number)) {
    throw new TraceFormatError('step count disagrees with footer');
  }
  return {
    schemaVersion: header.schema_version as number,
    steps,
    status: footer.status as TraceStatus,
    error: (footer.error ?? null) as string | null,
  };
}

import { readFileSync } from 'node:fs';

import { EvalResult, TraceProvider, TraceRequest } from '../src/session.js';

export function fixture(name: string): string {
  return readFileSync(new URL(`./fixtures/${name}`, import.meta.url), 'utf8');
}

export interface FixtureEntry {
  maxSteps?: number;
  continueBudget?: number;
  text: string;
}

/** A provider serving canned CLI output. Entries match on whichever of
 * maxSteps/continueBudget they pin, so budget doublings are observable. */
export function fixtureProvider(entries: FixtureEntry[],
                                log: TraceRequest[] = []): TraceProvider {
  return async (req: TraceRequest): Promise<EvalResult> => {
    log.push(req);
    for (const e of entries) {
      if ((e.maxSteps === undefined || e.maxSteps === req.maxSteps)
          && (e.continueBudget === undefined
              || e.continueBudget === req.continueBudget)) {
        return { kind: 'trace', text: e.text };
      }
    }
    return {
      kind: 'failure',
      message: `no fixture for ${req.maxSteps}/${req.continueBudget}`,
    };
  };
}

export function failingProvider(message: string): TraceProvider {
  return async () => ({ kind: 'failure', message });
}

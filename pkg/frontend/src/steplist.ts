// Textual step list: all steps up to the current index, in the same shape
// as the plain trace format (goal line, then justification/display pairs).

import { TraceStep } from './trace.js';

export function justificationLabel(step: TraceStep): string | null {
  if (step.kind === null) return null;
  return step.text;
}

export function stepLines(steps: TraceStep[], upTo: number): string[] {
  if (steps.length === 0) return [];
  const lines = ['  ' + steps[0].display];
  for (let i = 1; i <= upTo && i < steps.length; i++) {
    const step = steps[i];
    lines.push(`  { ${justificationLabel(step)} }`);
    const dots = '.'.repeat(4 * step.depth);
    lines.push(`= ${dots}${dots ? ' ' : ''}${step.display}`);
  }
  return lines;
}

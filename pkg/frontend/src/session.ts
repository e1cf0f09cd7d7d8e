// Session state: an editor view and a stepping view over one loaded trace.
// The UI embeds no evaluation logic; everything observable comes from the
// structured trace a TraceProvider returns.

import { ParsedTrace, TraceStep, parseTrace } from './trace.js';

export type Mode = 'editing' | 'stepping';

export interface TraceRequest {
  program: string;
  goal: string;
  maxSteps: number;
  continueBudget: number;
}

export type EvalResult =
  | { kind: 'trace'; text: string }
  | { kind: 'failure'; message: string };

export type TraceProvider = (req: TraceRequest) => Promise<EvalResult>;

export interface SessionOptions {
  maxSteps?: number;
  continueBudget?: number;
}

const DEFAULT_MAX_STEPS = 1000;
const DEFAULT_CONTINUE_BUDGET = 10;

export class SessionModel {
  editorText = '';
  goalText = '';
  mode: Mode = 'editing';
  stepIndex = 0;
  trace: ParsedTrace | null = null;
  errorBanner: string | null = null;

  private readonly provider: TraceProvider;
  private readonly baseMaxSteps: number;
  private readonly baseBudget: number;
  private maxSteps: number;
  private budget: number;

  constructor(provider: TraceProvider, options: SessionOptions = {}) {
    this.provider = provider;
    this.baseMaxSteps = options.maxSteps ?? DEFAULT_MAX_STEPS;
    this.baseBudget = options.continueBudget ?? DEFAULT_CONTINUE_BUDGET;
    this.maxSteps = this.baseMaxSteps;
    this.budget = this.baseBudget;
  }

  get steps(): TraceStep[] {
    return this.trace ? this.trace.steps : [];
  }

  get current(): TraceStep | null {
    return this.trace ? this.trace.steps[this.stepIndex] : null;
  }

  /** The suspended tail can be continued by stepping forward. */
  get suspendedAtEnd(): boolean {
    return this.trace !== null
      && this.trace.status === 'suspended'
      && this.stepIndex === this.trace.steps.length - 1;
  }

  /** A truncated tail can be extended by stepping forward. */
  get truncatedAtEnd(): boolean {
    return this.trace !== null
      && this.trace.status === 'truncated'
      && this.stepIndex === this.trace.steps.length - 1;
  }

  async evaluate(): Promise<void> {
    this.errorBanner = null;
    if (this.goalText.trim() === '') {
      this.errorBanner = 'enter an expression to evaluate';
      return;
    }
    this.budget = this.baseBudget;
    this.maxSteps = this.baseMaxSteps;
    const result = await this.provider({
      program: this.editorText,
      goal: this.goalText,
      maxSteps: this.maxSteps,
      continueBudget: this.budget,
    });
    if (result.kind === 'failure') {
      this.errorBanner = result.message; // the core's message, verbatim
      this.mode = 'editing';
      this.trace = null;
      return;
    }
    // replace any previous trace wholesale: no stale steps
    this.trace = parseTrace(result.text);
    this.mode = 'stepping';
    this.stepIndex = 0;
  }

  async stepForward(): Promise<void> {
    if (this.mode !== 'stepping' || this.trace === null) return;
    if (this.stepIndex < this.trace.steps.length - 1) {
      this.stepIndex += 1;
      return;
    }
    if (this.suspendedAtEnd) {
      this.budget *= 2;
      await this.refetch();
    } else if (this.truncatedAtEnd) {
      this.maxSteps *= 2; // next bounded batch of steps
      await this.refetch();
    }
    // otherwise clamped at the end
  }

  stepBackward(): void {
    if (this.mode !== 'stepping') return;
    if (this.stepIndex > 0) this.stepIndex -= 1;
  }

  backToEditor(): void {
    this.mode = 'editing';
    this.trace = null;
    this.stepIndex = 0;
    this.errorBanner = null;
  }

  /** Forward past the end of a suspended or truncated trace re-requests
   * with a doubled budget (continue? expansion and bounded step batches,
   * respectively); determinism keeps every earlier step equal. */
  private async refetch(): Promise<void> {
    if (this.trace === null) return;
    const result = await this.provider({
      program: this.editorText,
      goal: this.goalText,
      maxSteps: this.maxSteps,
      continueBudget: this.budget,
    });
    if (result.kind === 'failure') {
      this.errorBanner = result.message;
      return;
    }
    const expanded = parseTrace(result.text);
    if (expanded.steps.length > this.stepIndex) {
      this.trace = expanded;
      if (expanded.steps.length - 1 > this.stepIndex) {
        this.stepIndex += 1;
      }
    }
  }
}

// DOM wiring: an editor view (definitions + goal + Evaluate) and a stepping
// view (step list, back/forward buttons, keyboard control).

import { actionForKey } from './keyboard.js';
import { EvalResult, SessionModel, TraceRequest } from './session.js';
import { stepLines } from './steplist.js';

const serverProvider = async (req: TraceRequest): Promise<EvalResult> => {
  const response = await fetch('/trace', {
    method: 'POST',
    headers: { 'Content-Type': 'application/json' },
    body: JSON.stringify(req),
  });
  const body = await response.json();
  if (body.ok) return { kind: 'trace', text: body.trace };
  return { kind: 'failure', message: body.error };
};

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

export function wireUp(): void {
  const model = new SessionModel(serverProvider);

  const editorView = el<HTMLDivElement>('editor-view');
  const stepView = el<HTMLDivElement>('step-view');
  const editor = el<HTMLTextAreaElement>('editor');
  const goal = el<HTMLInputElement>('goal');
  const banner = el<HTMLDivElement>('banner');
  const stepsPre = el<HTMLPreElement>('steps');
  const statusLine = el<HTMLDivElement>('status');

  function render(): void {
    banner.textContent = model.errorBanner ?? '';
    banner.style.display = model.errorBanner ? 'block' : 'none';
    const stepping = model.mode === 'stepping';
    editorView.style.display = stepping ? 'none' : 'block';
    stepView.style.display = stepping ? 'block' : 'none';
    if (stepping && model.trace) {
      stepsPre.textContent =
        stepLines(model.trace.steps, model.stepIndex).join('\n');
      const last = model.stepIndex === model.trace.steps.length - 1;
      const note = model.suspendedAtEnd
        ? 'suspended - step forward to continue'
        : last ? model.trace.status : 'stepping';
      statusLine.textContent =
        `step ${model.stepIndex} of ${model.trace.steps.length - 1} (${note})`;
      stepsPre.scrollTop = stepsPre.scrollHeight;
    }
  }

  async function dispatch(action: 'forward' | 'backward' | 'exit') {
    if (action === 'forward') await model.stepForward();
    else if (action === 'backward') model.stepBackward();
    else model.backToEditor();
    render();
  }

  el<HTMLButtonElement>('evaluate').addEventListener('click', async () => {
    model.editorText = editor.value;
    model.goalText = goal.value;
    await model.evaluate();
    render();
  });
  el<HTMLButtonElement>('forward').addEventListener('click',
    () => void dispatch('forward'));
  el<HTMLButtonElement>('backward').addEventListener('click',
    () => void dispatch('backward'));
  el<HTMLButtonElement>('to-editor').addEventListener('click',
    () => void dispatch('exit'));

  document.addEventListener('keydown', event => {
    if (model.mode !== 'stepping') return;
    const action = actionForKey(event.key);
    if (action === null) return;
    event.preventDefault();
    void dispatch(action);
  });

  render();
}

wireUp();

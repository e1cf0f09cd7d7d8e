// Keyboard bindings for the stepping view. Buttons and keys dispatch the
// same session transitions, so the two paths cannot diverge.

export type StepAction = 'forward' | 'backward' | 'exit';

export function actionForKey(key: string): StepAction | null {
  switch (key) {
    case 'ArrowRight':
    case ' ':
      return 'forward';
    case 'ArrowLeft':
      return 'backward';
    case 'Escape':
      return 'exit';
    default:
      return null;
  }
}

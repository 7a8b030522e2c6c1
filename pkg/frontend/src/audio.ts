/**
 * Audible feedback: a short generated tone for errors, optional spoken
 * letters via the platform's speech synthesis.  Both degrade to silence
 * when the browser offers neither — entry keeps working regardless.
 */

export interface Feedback {
  beep(): void;
  say(text: string): void;
}

export class ToneFeedback implements Feedback {
  private ctx: AudioContext | null = null;

  private context(): AudioContext | null {
    if (this.ctx === null) {
      try {
        const Ctor =
          (globalThis as { AudioContext?: typeof AudioContext }).AudioContext;
        this.ctx = Ctor ? new Ctor() : null;
      } catch {
        this.ctx = null;
      }
    }
    return this.ctx;
  }

  beep(): void {
    try {
      const ctx = this.context();
      if (!ctx) return;
      const osc = ctx.createOscillator();
      const gain = ctx.createGain();
      osc.type = "square";
      osc.frequency.value = 440;
      gain.gain.value = 0.1;
      osc.connect(gain).connect(ctx.destination);
      osc.start();
      osc.stop(ctx.currentTime + 0.15);
    } catch {
      // no audio device: stay silent
    }
  }

  say(text: string): void {
    if (!text.trim()) return;
    try {
      const synth = (globalThis as { speechSynthesis?: SpeechSynthesis }).speechSynthesis;
      if (!synth) return;
      synth.speak(new SpeechSynthesisUtterance(text));
    } catch {
      // no speech support: stay silent
    }
  }
}

export class SilentFeedback implements Feedback {
  beep(): void {}
  say(): void {}
}

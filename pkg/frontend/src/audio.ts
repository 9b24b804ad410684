/** Sound cues as synthesized beeps; the client ships no audio assets. */

interface CueSpec {
  frequency: number;
  durationMs: number;
  type: OscillatorType;
}

const CUES: Record<string, CueSpec> = {
  win: { frequency: 880, durationMs: 350, type: "triangle" },
  weak: { frequency: 180, durationMs: 220, type: "sawtooth" },
  repulsion: { frequency: 120, durationMs: 260, type: "square" },
  life_lost: { frequency: 240, durationMs: 450, type: "sine" },
};

export class CueAudio {
  enabled = true;
  private context: AudioContext | null = null;

  toggle(): boolean {
    this.enabled = !this.enabled;
    return this.enabled;
  }

  play(name: string): void {
    if (!this.enabled) return;
    const spec = CUES[name];
    if (!spec) return;
    const ctx = this.ensureContext();
    if (!ctx) return;
    const osc = ctx.createOscillator();
    const gain = ctx.createGain();
    osc.type = spec.type;
    osc.frequency.value = spec.frequency;
    gain.gain.setValueAtTime(0.12, ctx.currentTime);
    gain.gain.exponentialRampToValueAtTime(
      1e-4,
      ctx.currentTime + spec.durationMs / 1000,
    );
    osc.connect(gain).connect(ctx.destination);
    osc.start();
    osc.stop(ctx.currentTime + spec.durationMs / 1000);
  }

  private ensureContext(): AudioContext | null {
    if (this.context) return this.context;
    const Ctor = (globalThis as { AudioContext?: typeof AudioContext }).AudioContext;
    if (!Ctor) return null;
    this.context = new Ctor();
    return this.context;
  }
}

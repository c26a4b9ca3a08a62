import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import { expect } from "vitest";

import type { ClientMessage, ServerMessage } from "../src/protocol.js";
import type { Transport } from "../src/transport.js";

export interface TranscriptEntry {
  dir: "send" | "recv";
  msg: Record<string, unknown>;
}

export function loadTranscript(): TranscriptEntry[] {
  const here = dirname(fileURLToPath(import.meta.url));
  const raw = readFileSync(join(here, "fixtures", "transcript.json"), "utf-8");
  return JSON.parse(raw) as TranscriptEntry[];
}

/**
 * Replays a recorded session: every client send must match the next
 * recorded send exactly, after which all following recorded server
 * messages are delivered.
 */
export class ScriptedTransport implements Transport {
  private cursor = 0;
  private handler: ((message: ServerMessage) => void) | null = null;

  constructor(private transcript: TranscriptEntry[]) {}

  send(message: ClientMessage): void {
    const expected = this.transcript[this.cursor];
    expect(expected, `unexpected send after end of transcript`).toBeDefined();
    expect(expected!.dir).toBe("send");
    expect(message).toEqual(expected!.msg);
    this.cursor += 1;
    this.deliver();
  }

  private deliver(): void {
    while (
      this.cursor < this.transcript.length &&
      this.transcript[this.cursor]!.dir === "recv"
    ) {
      const entry = this.transcript[this.cursor]!;
      this.cursor += 1;
      this.handler?.(entry.msg as unknown as ServerMessage);
    }
  }

  onMessage(handler: (message: ServerMessage) => void): void {
    this.handler = handler;
  }

  onClose(_handler: () => void): void {
    // The scripted session never drops.
  }

  get exhausted(): boolean {
    return this.cursor === this.transcript.length;
  }
}

import type {
  EngineEvent,
  GameOverPayload,
  HelloPayload,
  LegalMovesPayload,
  MoveResultPayload,
  PaletteWire,
  PublicState,
  ServerMessage,
} from "./protocol.js";
import { BROADCAST_KINDS } from "./protocol.js";
import type { Transport } from "./transport.js";

export interface SelectionStatus {
  giveSum: string | null;
  takeSum: string | null;
  giveCount: number;
  takeCount: number;
  sizesOk: boolean;
  sumsMatch: boolean;
  /** True when sizes are within 1..n and the sums agree. */
  canSubmit: boolean;
  isNull: boolean;
  warning: string | null;
}

const EVENT_FEED_LIMIT = 200;

function countOf(codes: string[], code: string): number {
  let n = 0;
  for (const c of codes) if (c === code) n += 1;
  return n;
}

/**
 * Client-side game state: the last broadcast, the pending give/take
 * selection, and the event feed.
 *
 * The server is the sole authority on legality; everything here is
 * pre-validation for responsiveness. Sums come exclusively from the
 * palette table shipped in the hello message - no color arithmetic is
 * reimplemented. State broadcasts replace the table wholesale and clear
 * the selection; the UI never updates optimistically.
 */
export class GameClient {
  session: string | null = null;
  seat: number | null = null;
  palette: PaletteWire | null = null;
  seats: HelloPayload["seats"] = [];
  state: PublicState | null = null;
  events: EngineEvent[] = [];
  hints: LegalMovesPayload | null = null;
  lastResult: MoveResultPayload | null = null;
  lastError: string | null = null;
  gameOver: GameOverPayload | null = null;
  connected = true;
  /** Set when a gap appears in the broadcast sequence numbers. */
  lostBroadcast = false;

  giveSelection: string[] = [];
  takeSelection: string[] = [];

  private lastBroadcastSeq: number | null = null;
  private codeIndex: Map<string, number> = new Map();

  constructor(
    private transport: Transport,
    private onChange: () => void = () => {},
  ) {
    transport.onMessage((message) => this.handle(message));
    transport.onClose(() => {
      this.connected = false;
      this.onChange();
    });
  }

  join(session: string, token?: string): void {
    this.session = session;
    this.transport.send({
      kind: "join",
      payload: { session, token: token ?? null },
    });
  }

  // ---- incoming ---------------------------------------------------------

  private handle(message: ServerMessage): void {
    if (BROADCAST_KINDS.has(message.kind)) {
      if (
        this.lastBroadcastSeq !== null &&
        message.seq !== this.lastBroadcastSeq + 1
      ) {
        this.lostBroadcast = true;
      }
      this.lastBroadcastSeq = message.seq;
    }
    switch (message.kind) {
      case "hello": {
        const payload = message.payload as unknown as HelloPayload;
        this.palette = payload.palette;
        this.seat = payload.seat;
        this.seats = payload.seats;
        this.codeIndex = new Map(
          payload.palette.order.map((code, i) => [code, i]),
        );
        break;
      }
      case "state":
        this.state = message.payload["state"] as PublicState;
        this.clearSelection();
        this.hints = null;
        break;
      case "event":
        this.events.push(message.payload["event"] as EngineEvent);
        if (this.events.length > EVENT_FEED_LIMIT) {
          this.events.splice(0, this.events.length - EVENT_FEED_LIMIT);
        }
        break;
      case "move_result":
        this.lastResult = message.payload as unknown as MoveResultPayload;
        if (!this.lastResult.ok) {
          this.lastError = this.lastResult.reason ?? "rejected";
        } else {
          this.lastError = null;
        }
        break;
      case "legal_moves":
        this.hints = message.payload as unknown as LegalMovesPayload;
        break;
      case "error":
        this.lastError = String(message.payload["reason"] ?? "error");
        break;
      case "game_over":
        this.gameOver = message.payload as unknown as GameOverPayload;
        break;
    }
    this.onChange();
  }

  // ---- selection --------------------------------------------------------

  get n(): number {
    return this.palette?.n ?? 0;
  }

  myHand(): string[] {
    if (this.state === null || this.seat === null) return [];
    return this.state.hands[this.seat] ?? [];
  }

  myTurn(): boolean {
    return (
      this.state !== null &&
      this.seat !== null &&
      !this.state.finished &&
      this.state.turn === this.seat
    );
  }

  clearSelection(): void {
    this.giveSelection = [];
    this.takeSelection = [];
  }

  /** Add one piece of `code` to the give side; false when the size cap or
   * hand contents forbid it. */
  addGive(code: string): boolean {
    if (this.giveSelection.length >= this.n) return false;
    if (countOf(this.giveSelection, code) >= countOf(this.myHand(), code)) {
      return false;
    }
    this.giveSelection.push(code);
    this.sortSelection(this.giveSelection);
    this.onChange();
    return true;
  }

  addTake(code: string): boolean {
    if (this.state === null) return false;
    if (this.takeSelection.length >= this.n) return false;
    if (countOf(this.takeSelection, code) >= countOf(this.state.center, code)) {
      return false;
    }
    this.takeSelection.push(code);
    this.sortSelection(this.takeSelection);
    this.onChange();
    return true;
  }

  removeGive(code: string): boolean {
    return this.removeFrom(this.giveSelection, code);
  }

  removeTake(code: string): boolean {
    return this.removeFrom(this.takeSelection, code);
  }

  private removeFrom(selection: string[], code: string): boolean {
    const at = selection.indexOf(code);
    if (at < 0) return false;
    selection.splice(at, 1);
    this.onChange();
    return true;
  }

  private sortSelection(selection: string[]): void {
    selection.sort(
      (a, b) => (this.codeIndex.get(a) ?? 0) - (this.codeIndex.get(b) ?? 0),
    );
  }

  /** Fold a multiset of codes through the shipped addition table. */
  sumOf(codes: string[]): string | null {
    if (this.palette === null) return null;
    let acc = this.palette.order[0]!; // identity
    for (const code of codes) {
      const i = this.codeIndex.get(acc);
      const j = this.codeIndex.get(code);
      if (i === undefined || j === undefined) return null;
      acc = this.palette.table[i]![j]!;
    }
    return acc;
  }

  selectionStatus(): SelectionStatus {
    const giveCount = this.giveSelection.length;
    const takeCount = this.takeSelection.length;
    const giveSum = giveCount ? this.sumOf(this.giveSelection) : null;
    const takeSum = takeCount ? this.sumOf(this.takeSelection) : null;
    const sizesOk =
      giveCount >= 1 &&
      giveCount <= this.n &&
      takeCount >= 1 &&
      takeCount <= this.n;
    const sumsMatch = giveSum !== null && giveSum === takeSum;
    const isNull =
      sizesOk &&
      giveCount === takeCount &&
      this.giveSelection.join(",") === this.takeSelection.join(",");
    let warning: string | null = null;
    if (isNull) {
      warning = "this exchange swaps identical sets and changes nothing";
    }
    return {
      giveSum,
      takeSum,
      giveCount,
      takeCount,
      sizesOk,
      sumsMatch,
      canSubmit: sizesOk && sumsMatch,
      isNull,
      warning,
    };
  }

  /** The Spectrum button lights up exactly when the hand covers the set. */
  canSpectrum(): boolean {
    if (this.palette === null) return false;
    const hand = this.myHand();
    const needed = new Map<string, number>();
    for (const code of this.palette.spectrum) {
      needed.set(code, (needed.get(code) ?? 0) + 1);
    }
    for (const [code, count] of needed) {
      if (countOf(hand, code) < count) return false;
    }
    return true;
  }

  canAnnounce(): boolean {
    return (
      this.myTurn() &&
      this.state !== null &&
      this.state.final_round === null &&
      this.myHand().length <= this.n
    );
  }

  // ---- outgoing ---------------------------------------------------------

  submitExchange(): boolean {
    if (!this.selectionStatus().canSubmit) return false;
    this.transport.send({
      kind: "submit_move",
      payload: {
        move: {
          type: "exchange",
          give: [...this.giveSelection],
          take: [...this.takeSelection],
        },
      },
    });
    return true;
  }

  submitSpectrum(): void {
    this.transport.send({
      kind: "submit_move",
      payload: { move: { type: "spectrum" } },
    });
  }

  submitPass(): void {
    this.transport.send({
      kind: "submit_move",
      payload: { move: { type: "pass" } },
    });
  }

  submitDraw(count = 1): void {
    this.transport.send({
      kind: "submit_move",
      payload: { move: { type: "draw", count } },
    });
  }

  announceFinal(): void {
    this.transport.send({ kind: "announce_final" });
  }

  requestHints(limit?: number): void {
    this.transport.send({
      kind: "legal_moves",
      payload: limit === undefined ? {} : { limit },
    });
  }
}

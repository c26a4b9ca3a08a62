/** Wire types shared with the session service (see docs/PROTOCOL.md). */

export interface PaletteWire {
  m: number;
  n: number;
  /** Display order; the identity ("K") comes first. */
  order: string[];
  entries: Record<string, number[]>;
  names: Record<string, string>;
  swatches: Record<string, string>;
  /** Full addition table: table[i][j] is order[i] + order[j]. */
  table: string[][];
  /** The give-set of the Spectrum move (n primaries plus the top shade). */
  spectrum: string[];
}

export interface SessionConfig {
  m: number;
  n: number;
  players: number;
  copies: number;
  setup?: string;
}

export interface PublicState {
  config: SessionConfig;
  bag: Record<string, number>;
  bag_total: number;
  hands: string[][];
  center: string[];
  blacks_dispensed: number;
  turn: number;
  round: number;
  first_player: number;
  final_round: number | null;
  final_trigger: { player: number; cause: string } | null;
  finished: boolean;
  turns_played: number;
  draws_made: number;
  canceled: Record<string, number>;
  initial_center: string | null;
}

export type MoveWire =
  | { type: "exchange"; give: string[]; take: string[] }
  | { type: "spectrum" }
  | { type: "pass" }
  | { type: "draw"; count: number };

export interface EngineEvent {
  kind: string;
  [field: string]: unknown;
}

export interface SeatInfo {
  player: number;
  kind: string;
}

export interface HelloPayload {
  session: string;
  config: SessionConfig;
  palette: PaletteWire;
  seat: number | null;
  seats: SeatInfo[];
}

export interface MoveResultPayload {
  ok: boolean;
  applied?: string;
  pieces?: string[];
  reason?: string;
}

export interface LegalMovesPayload {
  moves: MoveWire[];
  must_draw: boolean;
  can_announce: boolean;
}

export interface GameOverPayload {
  winners: number[];
  hand_sizes: number[];
}

export interface ServerMessage {
  kind:
    | "hello"
    | "state"
    | "event"
    | "move_result"
    | "legal_moves"
    | "error"
    | "game_over";
  seq: number;
  payload: Record<string, unknown>;
}

export interface ClientMessage {
  kind: "join" | "submit_move" | "announce_final" | "legal_moves";
  payload?: Record<string, unknown>;
}

/** Kinds whose sequence numbers are gapless per session. */
export const BROADCAST_KINDS = new Set(["state", "event", "game_over"]);

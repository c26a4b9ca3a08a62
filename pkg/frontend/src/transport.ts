import type { ClientMessage, ServerMessage } from "./protocol.js";

/** Message stream abstraction: a real websocket in the browser, a scripted
 * fake in tests. */
export interface Transport {
  send(message: ClientMessage): void;
  onMessage(handler: (message: ServerMessage) => void): void;
  onClose(handler: () => void): void;
}

export class WebSocketTransport implements Transport {
  private socket: WebSocket;
  private messageHandler: ((message: ServerMessage) => void) | null = null;
  private closeHandler: (() => void) | null = null;

  constructor(url: string) {
    this.socket = new WebSocket(url);
    this.socket.onmessage = (event) => {
      if (this.messageHandler) {
        this.messageHandler(JSON.parse(event.data as string));
      }
    };
    this.socket.onclose = () => this.closeHandler?.();
    this.socket.onerror = () => this.closeHandler?.();
  }

  /** Queue-free send: callers only send after the hello arrives, except
   * join, which we delay until the socket opens. */
  send(message: ClientMessage): void {
    if (this.socket.readyState === WebSocket.CONNECTING) {
      this.socket.addEventListener("open", () =>
        this.socket.send(JSON.stringify(message)),
      );
      return;
    }
    this.socket.send(JSON.stringify(message));
  }

  onMessage(handler: (message: ServerMessage) => void): void {
    this.messageHandler = handler;
  }

  onClose(handler: () => void): void {
    this.closeHandler = handler;
  }
}

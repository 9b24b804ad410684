/** One socket, one session, messages processed strictly in order. */

import { OutboundWriter, ProtocolError, decodeLine } from "./protocol.js";
import type { InputPayload, ServerMessage } from "./types.js";

/** The slice of WebSocket the client uses; tests provide a fake. */
export interface SocketLike {
  send(data: string): void;
  close(): void;
}

export class Connection {
  private readonly writer = new OutboundWriter();
  private lastServerSeq = -1;

  constructor(
    private readonly socket: SocketLike,
    private readonly onMessage: (msg: ServerMessage) => void,
    private readonly onProtocolError: (detail: string) => void = () => {},
  ) {}

  /** Feed raw socket data (one or more newline-delimited messages). */
  receive(data: string): void {
    for (const line of data.split("\n")) {
      if (!line.trim()) continue;
      let msg: ServerMessage;
      try {
        msg = decodeLine(line);
      } catch (err) {
        this.onProtocolError(err instanceof ProtocolError ? err.message : String(err));
        continue;
      }
      if (msg.seq <= this.lastServerSeq) {
        this.onProtocolError(`server seq ${msg.seq} not increasing`);
        continue;
      }
      this.lastServerSeq = msg.seq;
      this.onMessage(msg);
    }
  }

  join(packId: string, seed?: number): void {
    this.socket.send(this.writer.encodeJoin(packId, seed));
  }

  sendInput(input: InputPayload): void {
    this.socket.send(this.writer.encodeInput(input));
  }

  ackLatest(): void {
    if (this.lastServerSeq >= 0) {
      this.socket.send(this.writer.encodeTickAck(this.lastServerSeq));
    }
  }

  close(): void {
    this.socket.close();
  }
}

// WebSocket session client. One connection, one engine on the server;
// every message we send is JSON, every frame we receive is one message.

import {
  decodeMsg,
  encodeMsg,
  PROTOCOL_VERSION,
  type ClientMsg,
  type ServerMsg,
} from './protocol.js';

export interface SessionClientOptions {
  url: string;
  onMessage: (msg: ServerMsg) => void;
  onOpen?: () => void;
  onClose?: () => void;
}

export class SessionClient {
  private ws: WebSocket | null = null;

  constructor(private readonly opts: SessionClientOptions) {}

  connect(): void {
    const ws = new WebSocket(this.opts.url);
    this.ws = ws;
    ws.onopen = () => {
      this.send({ type: 'hello', protocol_version: PROTOCOL_VERSION });
      this.opts.onOpen?.();
    };
    ws.onmessage = (ev) => {
      for (const line of String(ev.data).split('\n')) {
        if (line.trim()) {
          this.opts.onMessage(decodeMsg(line));
        }
      }
    };
    ws.onclose = () => {
      this.ws = null;
      this.opts.onClose?.();
    };
    ws.onerror = () => ws.close();
  }

  get connected(): boolean {
    return this.ws !== null && this.ws.readyState === WebSocket.OPEN;
  }

  send(msg: ClientMsg): void {
    if (this.connected) {
      this.ws!.send(encodeMsg(msg).trimEnd());
    }
  }

  close(): void {
    this.ws?.close();
  }
}

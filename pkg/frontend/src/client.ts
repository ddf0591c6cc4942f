// The Battleship session driver for a player role (P1 or P2).
//
// The client interprets the role's EFSM at runtime: every outbound
// frame must be an enabled output edge and every inbound frame must
// match an enabled input edge, otherwise the session halts with a
// protocol error. Game semantics hang off the message labels; the
// machine decides when each of them is legal.

import {
  ACCEPT_LABEL,
  CONNECT_LABEL,
  MalformedFrame,
  WireMessage,
  connectFrame,
  decodeFrame,
  encodeFrame,
} from "./wire.js";
import { EfsmJson, EfsmMonitor, MonitorViolation } from "./efsm.js";
import {
  Config,
  Location,
  cellKey,
  configToJson,
  locationFromJson,
} from "./game.js";

export interface FrameSocket {
  send(text: string): void;
  close(): void;
  onFrame(handler: (text: string) => void): void;
  onClose(handler: () => void): void;
}

export interface ClientView {
  role: string;
  ownConfig: Config;
  hitsOnOwn: Set<string>;
  shots: Set<string>;
  hitsMade: Set<string>;
  myTurn: boolean;
  lastEvent: string;
}

export interface PlayerHooks {
  chooseAttack(view: ClientView): Promise<Location>;
  onUpdate?(view: ClientView): void;
  onProtocolError?(message: string): void;
}

export class ProtocolErrorHalt extends Error {}

class FrameQueue {
  private frames: string[] = [];
  private waiter: ((text: string) => void) | null = null;
  private closed = false;
  private closeWaiter: (() => void) | null = null;

  push(text: string): void {
    if (this.waiter) {
      const resolve = this.waiter;
      this.waiter = null;
      resolve(text);
    } else {
      this.frames.push(text);
    }
  }

  markClosed(): void {
    this.closed = true;
    if (this.closeWaiter) this.closeWaiter();
  }

  async next(): Promise<string> {
    const head = this.frames.shift();
    if (head !== undefined) return head;
    if (this.closed) throw new ProtocolErrorHalt("connection closed mid-session");
    return new Promise<string>((resolve, reject) => {
      this.waiter = resolve;
      this.closeWaiter = () =>
        reject(new ProtocolErrorHalt("connection closed mid-session"));
    });
  }
}

export class BattleshipClient {
  readonly monitor: EfsmMonitor;
  private readonly queue = new FrameQueue();
  private readonly view: ClientView;

  constructor(
    efsm: EfsmJson,
    private readonly socket: FrameSocket,
    private readonly config: Config,
    private readonly hooks: PlayerHooks,
  ) {
    this.monitor = new EfsmMonitor(efsm);
    this.view = {
      role: efsm.role,
      ownConfig: config,
      hitsOnOwn: new Set(),
      shots: new Set(),
      hitsMade: new Set(),
      myTurn: false,
      lastEvent: "connecting",
    };
    socket.onFrame((text) => this.queue.push(text));
    socket.onClose(() => this.queue.markClosed());
  }

  private update(event: string, myTurn?: boolean): void {
    this.view.lastEvent = event;
    if (myTurn !== undefined) this.view.myTurn = myTurn;
    this.hooks.onUpdate?.(this.view);
  }

  private send(msg: WireMessage): void {
    // Outbound conformance: refuse to emit anything the machine does
    // not allow at the current state.
    this.monitor.step("out", this.peer(msg), msg.label);
    this.socket.send(encodeFrame(msg));
  }

  private peer(_msg: WireMessage): string {
    return "GameServer";
  }

  async play(): Promise<"won" | "lost"> {
    try {
      return await this.drive();
    } catch (err) {
      if (err instanceof MonitorViolation || err instanceof MalformedFrame) {
        this.hooks.onProtocolError?.(String(err.message ?? err));
        this.socket.close();
        throw new ProtocolErrorHalt(String(err.message ?? err));
      }
      throw err;
    }
  }

  private async drive(): Promise<"won" | "lost"> {
    let result: "won" | "lost" | null = null;
    let lastShot: Location | null = null;

    while (!this.monitor.finished) {
      const edges = this.monitor.enabled();
      const first = edges[0];
      if (first === undefined) {
        throw new MonitorViolation("machine is stuck", this.monitor.state);
      }
      if (first.direction === "out") {
        if (first.label === CONNECT_LABEL) {
          // Session handshake: the connect frame asks the server to
          // bind this socket to our role; __accept confirms.
          this.socket.send(
            encodeFrame(connectFrame(this.monitor.efsm.protocol, this.view.role)),
          );
          const reply = decodeFrame(await this.queue.next());
          if (reply.label !== ACCEPT_LABEL) {
            throw new MonitorViolation(
              `handshake rejected with '${reply.label}'`,
              this.monitor.state,
            );
          }
          this.monitor.step("out", first.peer, CONNECT_LABEL);
          this.update("connected");
        } else if (first.label === "Init") {
          this.send({ label: "Init", payload: [configToJson(this.config)] });
          this.update("fleet submitted", false);
        } else if (first.label === "Attack") {
          this.update("your turn", true);
          const shot = await this.hooks.chooseAttack(this.view);
          lastShot = shot;
          this.view.shots.add(cellKey(shot));
          this.send({ label: "Attack", payload: [{ x: shot.x, y: shot.y }] });
          this.update(`attacked ${shot.x},${shot.y}`, false);
        } else {
          throw new MonitorViolation(
            `client cannot produce '${first.label}'`,
            this.monitor.state,
          );
        }
        continue;
      }

      // Input state: exactly the enabled labels may arrive.
      const msg = decodeFrame(await this.queue.next());
      const edge = this.monitor.step("in", first.peer, msg.label);
      if (msg.payload.length !== edge.payloads.length) {
        throw new MalformedFrame(
          `'${msg.label}' should carry ${edge.payloads.length} item(s)`,
        );
      }
      switch (msg.label) {
        case "hit":
          if (msg.payload.length === 1) {
            // Defender view: our cell was hit.
            this.view.hitsOnOwn.add(cellKey(locationFromJson(msg.payload[0]!)));
            this.update("incoming hit", false);
          } else {
            if (lastShot) this.view.hitsMade.add(cellKey(lastShot));
            this.update("hit!", true);
          }
          break;
        case "sunk":
          if (lastShot) this.view.hitsMade.add(cellKey(lastShot));
          this.update("sunk a ship!", true);
          break;
        case "miss":
          if (msg.payload.length === 1) {
            this.update("opponent missed; your turn", true);
          } else {
            this.update("splash; opponent's turn", false);
          }
          break;
        case "winner":
          result = "won";
          this.update("you won!", false);
          break;
        case "loser":
          this.view.hitsOnOwn.add(cellKey(locationFromJson(msg.payload[0]!)));
          result = "lost";
          this.update("fleet destroyed; you lost", false);
          break;
        default:
          throw new MonitorViolation(
            `no handler for '${msg.label}'`,
            this.monitor.state,
          );
      }
    }

    this.socket.close();
    if (result === null) {
      throw new MonitorViolation("session ended without a result", this.monitor.state);
    }
    return result;
  }
}

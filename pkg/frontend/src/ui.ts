// DOM layer: ship placement by clicking two endpoints, play grids,
// status line and the protocol-error banner. All rules live in
// game.ts; this file only paints and collects clicks.

import {
  Config,
  FLEET,
  GRID_SIZE,
  Location,
  Ship,
  cellKey,
  shipBetween,
  validateConfig,
} from "./game.js";
import type { ClientView } from "./client.js";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text) node.textContent = text;
  return node;
}

function grid(onClick?: (loc: Location) => void): HTMLElement {
  const board = el("div", "board");
  for (let y = 0; y < GRID_SIZE; y++) {
    for (let x = 0; x < GRID_SIZE; x++) {
      const cell = el("div", "cell");
      cell.dataset.key = cellKey({ x, y });
      if (onClick) cell.addEventListener("click", () => onClick({ x, y }));
      board.appendChild(cell);
    }
  }
  return board;
}

function paint(board: HTMLElement, key: string, cls: string): void {
  const cell = board.querySelector<HTMLElement>(`[data-key="${key}"]`);
  cell?.classList.add(cls);
}

export class Ui {
  private readonly status: HTMLElement;
  private readonly banner: HTMLElement;
  private ownBoard!: HTMLElement;
  private opponentBoard!: HTMLElement;
  private attackWaiter: ((loc: Location) => void) | null = null;
  private readonly shots = new Set<string>();

  constructor(private readonly root: HTMLElement) {
    this.banner = el("div", "banner hidden");
    this.status = el("div", "status", "place your fleet");
    root.append(this.banner, this.status);
  }

  say(text: string): void {
    this.status.textContent = text;
  }

  protocolError(message: string): void {
    this.banner.textContent = `protocol violation: ${message}`;
    this.banner.classList.remove("hidden");
    this.say("session halted");
  }

  /** Click-to-place flow: first and last cell of each ship in turn. */
  placeShips(): Promise<Config> {
    return new Promise((resolve) => {
      const ships: Ship[] = [];
      const taken = new Set<string>();
      let pending: Location | null = null;
      let remaining = [...FLEET];

      const wrap = el("div", "placement");
      const board = grid((loc) => {
        const length = remaining[0];
        if (length === undefined) return;
        if (length === 1) {
          tryShip([loc]);
          return;
        }
        if (pending === null) {
          pending = loc;
          paint(board, cellKey(loc), "pending");
          this.say(`ship of ${length}: now click its last cell`);
          return;
        }
        const ship = shipBetween(pending, loc);
        board
          .querySelector(`[data-key="${cellKey(pending)}"]`)
          ?.classList.remove("pending");
        pending = null;
        if (ship === null || ship.length !== length) {
          this.say(`not a straight ship of ${length}; start again`);
          return;
        }
        tryShip(ship);
      });

      const tryShip = (ship: Ship) => {
        if (ship.some((c) => taken.has(cellKey(c)))) {
          this.say("ships may not overlap; start again");
          return;
        }
        ships.push(ship);
        ship.forEach((c) => {
          taken.add(cellKey(c));
          paint(board, cellKey(c), "ship");
        });
        remaining = remaining.slice(1);
        prompt();
      };

      const submit = el("button", "submit", "start game");
      submit.disabled = true;
      submit.addEventListener("click", () => {
        const config: Config = { ships };
        const violations = validateConfig(config);
        if (violations.length > 0) {
          this.say(`invalid fleet: ${violations[0]}`);
          return;
        }
        wrap.remove();
        resolve(config);
      });

      const prompt = () => {
        const next = remaining[0];
        if (next === undefined) {
          this.say("fleet complete; start the game");
          submit.disabled = false;
        } else {
          this.say(`ship of ${next}: click its first cell`);
        }
      };

      wrap.append(board, submit);
      this.root.appendChild(wrap);
      prompt();
    });
  }

  showPlayBoards(): void {
    const wrap = el("div", "play");
    const mine = el("div", "side");
    mine.appendChild(el("h2", undefined, "your fleet"));
    this.ownBoard = grid();
    mine.appendChild(this.ownBoard);
    const theirs = el("div", "side");
    theirs.appendChild(el("h2", undefined, "your shots"));
    this.opponentBoard = grid((loc) => {
      if (this.attackWaiter && !this.shots.has(cellKey(loc))) {
        this.shots.add(cellKey(loc));
        const resolve = this.attackWaiter;
        this.attackWaiter = null;
        resolve(loc);
      }
    });
    theirs.appendChild(this.opponentBoard);
    wrap.append(mine, theirs);
    this.root.appendChild(wrap);
  }

  chooseAttack(): Promise<Location> {
    this.say("your turn: click a cell to attack");
    return new Promise((resolve) => {
      this.attackWaiter = resolve;
    });
  }

  repaint(view: ClientView): void {
    if (!this.ownBoard) return;
    for (const ship of view.ownConfig.ships) {
      for (const cell of ship) paint(this.ownBoard, cellKey(cell), "ship");
    }
    for (const key of view.hitsOnOwn) paint(this.ownBoard, key, "hit");
    for (const key of view.shots) paint(this.opponentBoard, key, "shot");
    for (const key of view.hitsMade) paint(this.opponentBoard, key, "hit");
    this.say(view.lastEvent + (view.myTurn ? " (your turn)" : ""));
    document.body.classList.toggle("my-turn", view.myTurn);
  }
}

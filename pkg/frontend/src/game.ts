// Battleship board model. The placement validation mirrors the
// server's rules (same violation codes), checked against shared golden
// fixtures so the browser rejects exactly what the server would.

import type { JsonValue } from "./wire.js";

export const GRID_SIZE = 10;
export const FLEET = [5, 4, 3, 3, 2];

export interface Location {
  x: number;
  y: number;
}

export type Ship = Location[];

export interface Config {
  ships: Ship[];
}

export function sameCell(a: Location, b: Location): boolean {
  return a.x === b.x && a.y === b.y;
}

export function cellKey(loc: Location): string {
  return `${loc.x},${loc.y}`;
}

export function configToJson(config: Config): JsonValue {
  return config.ships.map((ship) => ship.map((c) => ({ x: c.x, y: c.y })));
}

export function locationFromJson(value: JsonValue): Location {
  const cell = value as { x?: unknown; y?: unknown };
  if (typeof cell?.x !== "number" || typeof cell?.y !== "number") {
    throw new Error(`not a grid location: ${JSON.stringify(value)}`);
  }
  return { x: cell.x, y: cell.y };
}

export function configFromJson(value: JsonValue): Config {
  if (!Array.isArray(value)) {
    throw new Error("not a fleet configuration");
  }
  return {
    ships: value.map((ship) => {
      if (!Array.isArray(ship)) throw new Error("not a ship");
      return ship.map(locationFromJson);
    }),
  };
}

export function validateConfig(
  config: Config,
  gridSize = GRID_SIZE,
  fleet: number[] = FLEET,
): string[] {
  const violations: string[] = [];
  for (const ship of config.ships) {
    for (const cell of ship) {
      if (cell.x < 0 || cell.x >= gridSize || cell.y < 0 || cell.y >= gridSize) {
        violations.push(`OUT_OF_BOUNDS: ${JSON.stringify(cell)}`);
      }
    }
    if (new Set(ship.map(cellKey)).size !== ship.length) {
      violations.push("OVERLAP: a ship occupies a cell twice");
    }
    if (ship.length >= 2) {
      const xs = new Set(ship.map((c) => c.x));
      const ys = new Set(ship.map((c) => c.y));
      if (xs.size !== 1 && ys.size !== 1) {
        violations.push(`NOT_STRAIGHT: ship of length ${ship.length}`);
      } else {
        const axis = (
          xs.size === 1 ? ship.map((c) => c.y) : ship.map((c) => c.x)
        ).sort((a, b) => a - b);
        const first = axis[0] ?? 0;
        const contiguous = axis.every((v, i) => v === first + i);
        if (!contiguous) {
          violations.push(`NOT_CONTIGUOUS: ship of length ${ship.length}`);
        }
      }
    }
  }
  const seen = new Set<string>();
  for (const ship of config.ships) {
    for (const cell of ship) {
      const key = cellKey(cell);
      if (seen.has(key)) {
        violations.push(`OVERLAP: two ships share ${JSON.stringify(cell)}`);
      }
      seen.add(key);
    }
  }
  const lengths = config.ships.map((s) => s.length).sort((a, b) => a - b);
  const expected = [...fleet].sort((a, b) => a - b);
  if (lengths.join(",") !== expected.join(",")) {
    violations.push(
      `WRONG_FLEET: lengths [${lengths.join(", ")}], expected [${expected.join(", ")}]`,
    );
  }
  return violations;
}

/** Cells covered by a straight ship between two endpoints, or null. */
export function shipBetween(a: Location, b: Location): Ship | null {
  if (a.x === b.x) {
    const [lo, hi] = a.y <= b.y ? [a.y, b.y] : [b.y, a.y];
    return Array.from({ length: hi - lo + 1 }, (_, i) => ({ x: a.x, y: lo + i }));
  }
  if (a.y === b.y) {
    const [lo, hi] = a.x <= b.x ? [a.x, b.x] : [b.x, a.x];
    return Array.from({ length: hi - lo + 1 }, (_, i) => ({ x: lo + i, y: a.y }));
  }
  return null;
}

export function classicConfig(): Config {
  return {
    ships: FLEET.map((length, row) =>
      Array.from({ length }, (_, x) => ({ x, y: row })),
    ),
  };
}

/** Seeded PRNG (mulberry32) so scripted players are reproducible. */
export function seededRng(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a |= 0;
    a = (a + 0x6d2b79f5) | 0;
    let t = Math.imul(a ^ (a >>> 15), 1 | a);
    t = (t + Math.imul(t ^ (t >>> 7), 61 | t)) ^ t;
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export function randomConfig(rng: () => number, gridSize = GRID_SIZE): Config {
  const taken = new Set<string>();
  const ships: Ship[] = [];
  for (const length of FLEET) {
    for (;;) {
      const horizontal = rng() < 0.5;
      const x = Math.floor(rng() * (horizontal ? gridSize - length + 1 : gridSize));
      const y = Math.floor(rng() * (horizontal ? gridSize : gridSize - length + 1));
      const ship: Ship = Array.from({ length }, (_, i) =>
        horizontal ? { x: x + i, y } : { x, y: y + i },
      );
      if (ship.every((c) => !taken.has(cellKey(c)))) {
        ship.forEach((c) => taken.add(cellKey(c)));
        ships.push(ship);
        break;
      }
    }
  }
  return { ships };
}

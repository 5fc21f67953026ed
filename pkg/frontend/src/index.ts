// Batch bindings to the invsphere command line tool.
//
// Every call shells out to the CLI (resolved from $INVSPHERE_BIN, default
// "invsphere" on PATH), exchanging vectors through the packed binary format
// and conversion records through JSON files in a throwaway temp directory.
// Failures are mapped back to typed exceptions via the exit-code/stderr
// contract; see errors.ts.
//
// All APIs are batch-level (number[][] in, number[][] out): one process
// spawn per call is the dominant cost, so per-scalar wrappers would be a
// trap.

import { spawnSync } from "node:child_process";
import { mkdtempSync, readFileSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { InvsphereError, mapCliError } from "./errors.js";
import { decodeF64le, encodeF64le } from "./format.js";

export * from "./errors.js";
export { encodeF64le, decodeF64le } from "./format.js";

export interface Cap {
  p: number[];
  b: number;
}

export interface Ball {
  c: number[];
  r: number;
}

export interface Spheroid {
  c: number[];
  a1: number[];
  r1: number;
  r2: number;
}

export interface AbidReport {
  value: number;
  nPairs: number;
  nSkipped: number;
}

export interface SweepResult {
  bestS: number;
  meanNorm: number;
  grid: number[];
  abidCurve: number[];
}

export interface AbidOptions {
  pairBudget?: number;
  seed?: number;
}

export interface SweepOptions {
  gridSize?: number;
  lo?: number;
  hi?: number;
  center?: "mean_norm" | "median_norm";
  recenter?: boolean;
  pairBudget?: number;
  seed?: number;
}

function cliBinary(): string {
  return process.env.INVSPHERE_BIN ?? "invsphere";
}

function runCli(args: string[]): void {
  const result = spawnSync(cliBinary(), args, { encoding: "utf-8" });
  if (result.error) {
    throw new InvsphereError(
      `failed to spawn ${cliBinary()}: ${result.error.message}`,
    );
  }
  if (result.status !== 0) {
    throw mapCliError(result.status ?? -1, result.stderr ?? "");
  }
}

function withTempDir<T>(body: (dir: string) => T): T {
  const dir = mkdtempSync(join(tmpdir(), "invsphere-"));
  try {
    return body(dir);
  } finally {
    rmSync(dir, { recursive: true, force: true });
  }
}

function datasetCall(
  command: string,
  points: number[][],
  extraArgs: (dir: string) => string[],
): number[][] {
  return withTempDir((dir) => {
    const input = join(dir, "in.bin");
    const output = join(dir, "out.bin");
    writeFileSync(input, encodeF64le(points));
    runCli([
      command,
      "--input", input,
      "--output", output,
      "--format", "f64le",
      ...extraArgs(dir),
    ]);
    return decodeF64le(readFileSync(output));
  });
}

function writeDirectionFile(dir: string, v: number[]): string {
  const path = join(dir, "v.csv");
  writeFileSync(path, v.map((x) => x.toPrecision(17)).join(",") + "\n");
  return path;
}

function recordCall(
  command: string,
  record: Record<string, unknown>,
  extraArgs: (dir: string) => string[] = () => [],
): Record<string, unknown> {
  return withTempDir((dir) => {
    const input = join(dir, "in.json");
    const output = join(dir, "out.json");
    writeFileSync(input, JSON.stringify(record));
    runCli([command, "--input", input, "--output", output, ...extraArgs(dir)]);
    return JSON.parse(readFileSync(output, "utf-8"));
  });
}

export function embedSimplified(points: number[][], s: number): number[][] {
  return datasetCall("embed", points, () => ["--s", String(s)]);
}

export function unembedSimplified(points: number[][], s: number): number[][] {
  return datasetCall("unembed", points, () => ["--s", String(s)]);
}

export function embed(points: number[][], v: number[], s: number): number[][] {
  return datasetCall("embed", points, (dir) => [
    "--s", String(s),
    "--v-file", writeDirectionFile(dir, v),
  ]);
}

export function unembed(points: number[][], v: number[], s: number): number[][] {
  return datasetCall("unembed", points, (dir) => [
    "--s", String(s),
    "--v-file", writeDirectionFile(dir, v),
  ]);
}

export function capToBall(cap: Cap, s: number): Ball {
  const rec = recordCall("cap2ball", { p: cap.p, b: cap.b, s });
  return { c: rec.c as number[], r: rec.r as number };
}

export function ballToCap(ball: Ball, s: number): Cap {
  const rec = recordCall("ball2cap", { c: ball.c, r: ball.r, s });
  return { p: rec.p as number[], b: rec.b as number };
}

export function capToSpheroid(cap: Cap, v: number[], s: number): Spheroid {
  const rec = recordCall(
    "cap2spheroid",
    { p: cap.p, b: cap.b, s },
    (dir) => ["--v-file", writeDirectionFile(dir, v)],
  );
  return {
    c: rec.c as number[],
    a1: rec.a1 as number[],
    r1: rec.r1 as number,
    r2: rec.r2 as number,
  };
}

function bridge(
  op: string,
  x: number[][],
  y: number[][],
  s: number,
): number[] {
  return withTempDir((dir) => {
    const xPath = join(dir, "x.bin");
    const yPath = join(dir, "y.bin");
    const output = join(dir, "out.bin");
    writeFileSync(xPath, encodeF64le(x));
    writeFileSync(yPath, encodeF64le(y));
    runCli([
      "bridge",
      "--op", op,
      "--x", xPath,
      "--y", yPath,
      "--s", String(s),
      "--format", "f64le",
      "--output", output,
    ]);
    return decodeF64le(readFileSync(output)).map((row) => row[0]);
  });
}

export function dotEmbedded(x: number[][], y: number[][], s: number): number[] {
  return bridge("dot-embedded", x, y, s);
}

export function sqdistEmbedded(x: number[][], y: number[][], s: number): number[] {
  return bridge("sqdist-embedded", x, y, s);
}

export function dotOriginal(x: number[][], y: number[][], s: number): number[] {
  return bridge("dot-original", x, y, s);
}

export function sqdistOriginal(x: number[][], y: number[][], s: number): number[] {
  return bridge("sqdist-original", x, y, s);
}

export function abid(points: number[][], options: AbidOptions = {}): AbidReport {
  return withTempDir((dir) => {
    const input = join(dir, "in.bin");
    const output = join(dir, "out.json");
    writeFileSync(input, encodeF64le(points));
    const args = ["abid", "--input", input, "--format", "f64le",
                  "--output", output];
    if (options.pairBudget !== undefined) {
      args.push("--pair-budget", String(options.pairBudget));
    }
    if (options.seed !== undefined) {
      args.push("--seed", String(options.seed));
    }
    runCli(args);
    const rec = JSON.parse(readFileSync(output, "utf-8"));
    return { value: rec.value, nPairs: rec.n_pairs, nSkipped: rec.n_skipped };
  });
}

export function sweepScale(
  points: number[][],
  options: SweepOptions = {},
): SweepResult {
  return withTempDir((dir) => {
    const input = join(dir, "in.bin");
    const output = join(dir, "out.csv");
    writeFileSync(input, encodeF64le(points));
    const args = ["sweep", "--input", input, "--format", "f64le",
                  "--output", output];
    if (options.gridSize !== undefined) {
      args.push("--grid-size", String(options.gridSize));
    }
    if (options.lo !== undefined) args.push("--lo", String(options.lo));
    if (options.hi !== undefined) args.push("--hi", String(options.hi));
    if (options.center !== undefined) args.push("--center", options.center);
    if (options.recenter === false) args.push("--no-recenter");
    if (options.pairBudget !== undefined) {
      args.push("--pair-budget", String(options.pairBudget));
    }
    if (options.seed !== undefined) args.push("--seed", String(options.seed));
    runCli(args);
    return parseSweepTable(readFileSync(output, "utf-8"));
  });
}

function parseSweepTable(text: string): SweepResult {
  const lines = text.trim().split("\n");
  const header = /^# best_s=(\S+) mean_norm=(\S+)$/.exec(lines[0]);
  if (!header) {
    throw new InvsphereError(`unexpected sweep header: ${lines[0]}`);
  }
  const grid: number[] = [];
  const abidCurve: number[] = [];
  for (const line of lines.slice(1)) {
    const [s, a] = line.split(",");
    grid.push(Number(s));
    abidCurve.push(Number(a));
  }
  return {
    bestS: Number(header[1]),
    meanNorm: Number(header[2]),
    grid,
    abidCurve,
  };
}

// The packed binary dataset format shared with the CLI.
//
// Layout: magic "SPHE", then point count and dimension as little-endian
// uint32, then n*d little-endian float64 values row-major. The binary
// round trip is bit-exact, which is what makes 1e-12 parity with the
// Python side meaningful.

import { InputFormatError } from "./errors.js";

const MAGIC = "SPHE";
const HEADER_BYTES = 12;

export function encodeF64le(points: number[][]): Buffer {
  const n = points.length;
  const d = n > 0 ? points[0].length : 0;
  const buf = Buffer.alloc(HEADER_BYTES + 8 * n * d);
  buf.write(MAGIC, 0, "ascii");
  buf.writeUInt32LE(n, 4);
  buf.writeUInt32LE(d, 8);
  let offset = HEADER_BYTES;
  for (const row of points) {
    if (row.length !== d) {
      throw new InputFormatError(
        `ragged input: expected ${d} values per row, got ${row.length}`,
      );
    }
    for (const value of row) {
      buf.writeDoubleLE(value, offset);
      offset += 8;
    }
  }
  return buf;
}

export function decodeF64le(buf: Buffer): number[][] {
  if (buf.length < HEADER_BYTES || buf.toString("ascii", 0, 4) !== MAGIC) {
    throw new InputFormatError("missing or malformed magic bytes");
  }
  const n = buf.readUInt32LE(4);
  const d = buf.readUInt32LE(8);
  if (buf.length !== HEADER_BYTES + 8 * n * d) {
    throw new InputFormatError(
      `truncated payload: expected ${HEADER_BYTES + 8 * n * d} bytes, got ${buf.length}`,
    );
  }
  const points: number[][] = [];
  let offset = HEADER_BYTES;
  for (let i = 0; i < n; i++) {
    const row = new Array<number>(d);
    for (let j = 0; j < d; j++) {
      row[j] = buf.readDoubleLE(offset);
      offset += 8;
    }
    points.push(row);
  }
  return points;
}

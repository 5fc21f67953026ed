// Typed errors mirroring the CLI's failure contract.
//
// The CLI reports failures as an exit code (1 = input format, 2 =
// precondition, 3 = numeric singularity) plus a stderr line starting with
// the error class name, e.g. "PointAtSouthPole: ...". mapCliError turns
// that pair back into a typed exception.

export class InvsphereError extends Error {
  constructor(message: string) {
    super(message);
    this.name = new.target.name;
  }
}

export class InputFormatError extends InvsphereError {}
export class PreconditionError extends InvsphereError {}
export class SingularityError extends InvsphereError {}

export class DimensionMismatch extends PreconditionError {}
export class InvalidDirection extends PreconditionError {}
export class InvalidScale extends PreconditionError {}
export class EmptyDataset extends PreconditionError {}
export class TooFewPoints extends PreconditionError {}
export class DegenerateCap extends PreconditionError {}
export class ZeroVector extends PreconditionError {}
export class ZeroMean extends PreconditionError {}

export class PointAtSouthPole extends SingularityError {}
export class CapContainsSouthPole extends SingularityError {}
export class AxisUndefined extends SingularityError {}
export class AllCosinesZero extends SingularityError {}
export class ZeroEmbeddedCosine extends SingularityError {}

const NAMED: Record<string, new (message: string) => InvsphereError> = {
  InputFormatError,
  PreconditionError,
  SingularityError,
  DimensionMismatch,
  InvalidDirection,
  InvalidScale,
  EmptyDataset,
  TooFewPoints,
  DegenerateCap,
  ZeroVector,
  ZeroMean,
  PointAtSouthPole,
  CapContainsSouthPole,
  AxisUndefined,
  AllCosinesZero,
  ZeroEmbeddedCosine,
};

const FALLBACK: Record<number, new (message: string) => InvsphereError> = {
  1: InputFormatError,
  2: PreconditionError,
  3: SingularityError,
};

export function mapCliError(exitCode: number, stderr: string): InvsphereError {
  const line = stderr.trim().split("\n").pop() ?? "";
  const match = /^([A-Za-z]+): (.*)$/s.exec(line);
  if (match && match[1] in NAMED) {
    return new NAMED[match[1]](match[2]);
  }
  const ctor = FALLBACK[exitCode] ?? InvsphereError;
  return new ctor(line || `CLI failed with exit code ${exitCode}`);
}

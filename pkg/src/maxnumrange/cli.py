"""Command-line front end.

Reads a matrix, a matrix tuple and optional weights from a JSON or
plain-text file, runs one computation and prints one JSON document.
Exit status: 0 success, 1 failed ``verify`` claims, 2 input error,
3 refused enumeration.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import core, joint, oracle, perm, single
from .errors import EnumerationLimitError, MaxAlgebraError, NegativeEntryError
from .isometry import DEFAULT_LIMIT

COMMANDS = ("wmax", "wmax-k", "lambda-k", "radius", "eig", "hull", "c-range", "C-range",
            "joint-box", "joint-exact", "joint-cloud", "joint-c", "joint-C", "verify")

NEEDS_K = {"wmax-k", "lambda-k", "radius", "joint-box", "joint-cloud"}
SINGLE_MATRIX = {"wmax", "wmax-k", "lambda-k", "radius", "eig", "hull", "c-range", "C-range"}

EXIT_OK, EXIT_CLAIMS_FAILED, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3

DEFAULT_TRIALS = 20


class InputError(MaxAlgebraError):
    """Malformed input; ``line``/``col`` are 1-based when known."""

    def __init__(self, message, line=None, col=None):
        where = f" (line {line}, column {col})" if line is not None else ""
        super().__init__(message + where)
        self.line = line
        self.col = col


@dataclass
class ParsedInput:
    matrices: Optional[np.ndarray] = None
    c: Optional[np.ndarray] = None
    C: Optional[np.ndarray] = None

    @property
    def matrix(self) -> np.ndarray:
        if self.matrices is None:
            raise InputError("input has no matrix")
        if self.matrices.shape[0] != 1:
            raise InputError(f"expected one matrix, got a tuple of {self.matrices.shape[0]}")
        return self.matrices[0]


def _check_entries(arr: np.ndarray, name: str, positions=None) -> np.ndarray:
    bad = ~np.isfinite(arr) | (arr < 0)
    if bad.any():
        idx = tuple(int(i) for i in np.argwhere(bad)[0])
        msg = f"{name} entry {idx} = {float(arr[idx])!r} is not a nonnegative finite number"
        if positions is not None:
            line, col = positions[idx]
            msg += f" (line {line}, column {col})"
        raise NegativeEntryError(msg, idx)
    return arr


def _json_array(value, name: str, ndim: int) -> np.ndarray:
    def walk(v, depth, path):
        if depth == ndim:
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise InputError(f"{name}{path} is not a number: {v!r}")
            return float(v)
        if not isinstance(v, list) or not v:
            raise InputError(f"{name}{path} must be a nonempty array")
        return [walk(x, depth + 1, f"{path}[{i}]") for i, x in enumerate(v)]

    data = walk(value, 0, "")
    if ndim == 2 and len({len(r) for r in data}) != 1:
        lens = [len(r) for r in data]
        raise InputError(f"{name} is ragged: row lengths {lens}")
    return _check_entries(np.array(data, dtype=np.float64), name)


def _parse_json(text: str) -> ParsedInput:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    if not isinstance(doc, dict):
        raise InputError("JSON input must be an object")
    unknown = set(doc) - {"matrix", "matrices", "c", "C"}
    if unknown:
        raise InputError(f"unknown field(s): {sorted(unknown)}")
    if "matrix" in doc and "matrices" in doc:
        raise InputError('give either "matrix" or "matrices", not both')
    out = ParsedInput()
    if "matrix" in doc:
        out.matrices = _json_array(doc["matrix"], "matrix", 2)[None]
    elif "matrices" in doc:
        if not isinstance(doc["matrices"], list) or not doc["matrices"]:
            raise InputError('"matrices" must be a nonempty array of matrices')
        mats = [_json_array(M, f"matrices[{i}]", 2) for i, M in enumerate(doc["matrices"])]
        if len({M.shape for M in mats}) != 1:
            raise InputError(f"tuple members differ in shape: {[M.shape for M in mats]}")
        out.matrices = np.stack(mats)
    if "c" in doc:
        out.c = _json_array(doc["c"], "c", 1)
    if "C" in doc:
        out.C = _json_array(doc["C"], "C", 2)
    return out


def _parse_text(text: str) -> ParsedInput:
    blocks: list = []
    current: list = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            if current:
                blocks.append(current)
                current = []
            continue
        row = []
        col = 0
        for tok in line.split():
            col = line.index(tok, col) + 1
            try:
                row.append((float(tok), (lineno, col)))
            except ValueError:
                raise InputError(f"not a number: {tok!r}", lineno, col) from None
            col += len(tok) - 1
        current.append((lineno, row))
    if current:
        blocks.append(current)
    if not blocks:
        raise InputError("input contains no numbers")
    mats = []
    for b, rows in enumerate(blocks):
        width = len(rows[0][1])
        for lineno, row in rows:
            if len(row) != width:
                raise InputError(f"ragged row: expected {width} entries, got {len(row)}", lineno, 1)
        arr = np.array([[v for v, _ in row] for _, row in rows])
        positions = {(i, j): pos for i, (_, row) in enumerate(rows) for j, (_, pos) in enumerate(row)}
        name = "matrix" if len(blocks) == 1 else f"matrix {b + 1}"
        mats.append(_check_entries(arr, name, positions))
    if len({M.shape for M in mats}) != 1:
        raise InputError(f"tuple members differ in shape: {[M.shape for M in mats]}")
    return ParsedInput(matrices=np.stack(mats))


def parse_input(path) -> ParsedInput:
    """Read a JSON document or whitespace-delimited text (blank line between tuple members)."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    if text.lstrip().startswith("{"):
        return _parse_json(text)
    return _parse_text(text)


def parse_weights(value: str) -> np.ndarray:
    """``--c`` value: comma- or space-separated numbers."""
    toks = value.replace(",", " ").split()
    if not toks:
        raise InputError("--c needs at least one number")
    try:
        c = np.array([float(t) for t in toks])
    except ValueError:
        raise InputError(f"--c is not a list of numbers: {value!r}") from None
    return _check_entries(c, "c")


@dataclass
class JobSpec:
    command: str
    input: Optional[str] = None
    k: Optional[int] = None
    c: Optional[str] = None
    C_file: Optional[str] = None
    samples: int = 10000
    seed: int = 0
    limit: int = DEFAULT_LIMIT
    format: str = "json"
    out: Optional[str] = None
    trials: int = DEFAULT_TRIALS

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise InputError(f"unknown command {self.command!r}")
        if self.command != "verify" and self.input is None:
            raise InputError(f"{self.command} needs an input file")
        if self.command in NEEDS_K and self.k is None:
            raise InputError(f"{self.command} needs --k")
        if self.command == "hull" and self.k is None and self.c is None:
            raise InputError("hull needs --c (c-range hull) or --k (rank-k range hull)")
        if self.samples < 1:
            raise InputError("--samples must be positive")
        if self.limit < 1:
            raise InputError("--limit must be positive")
        if self.trials < 1:
            raise InputError("--trials must be at least 1")
        if self.format not in ("json", "csv"):
            raise InputError("--format must be json or csv")


# ----------------------------------------------------------------------
# result documents


def _interval_doc(items) -> dict:
    return {"kind": "interval_set", "intervals": [iv.to_dict() for iv in items]}


def _points_doc(ps: perm.PointSet) -> dict:
    return {"kind": "point_set", "count": len(ps), "points": ps.to_lists()}


def _weights_for(job: JobSpec, data: ParsedInput) -> np.ndarray:
    c = parse_weights(job.c) if job.c is not None else data.c
    if c is None:
        raise InputError(f"{job.command} needs --c or a \"c\" field in the input")
    return c


def _weight_matrix_for(job: JobSpec, data: ParsedInput) -> np.ndarray:
    if job.C_file is not None:
        other = parse_input(job.C_file)
        if other.C is not None:
            return other.C
        return other.matrix
    if data.C is None:
        raise InputError(f"{job.command} needs --C-file or a \"C\" field in the input")
    return data.C


def compute(job: JobSpec) -> dict:
    """Run the job and return the result document."""
    cmd = job.command
    if cmd == "verify":
        reports = oracle.run_claim_suite(job.seed, job.trials)
        return {"kind": "report", "seed": job.seed, "trials": job.trials,
                "passed": all(r.passed for r in reports),
                "claims": [r.to_record() for r in reports]}
    data = parse_input(job.input)
    if data.matrices is None:
        raise InputError("input has no matrix")
    T = data.matrices
    A = data.matrix if cmd in SINGLE_MATRIX else None
    k = job.k
    if cmd == "wmax":
        return _interval_doc([single.wmax(A)])
    if cmd == "wmax-k":
        return _interval_doc([single.wmax_k(A, k)])
    if cmd == "lambda-k":
        return _interval_doc(single.lambda_k(A, k, job.limit))
    if cmd == "radius":
        r = single.lambda_radius(A, k, job.limit)
        empty = r == single.BOTTOM
        return {"kind": "scalar", "value": None if empty else r, "empty": empty}
    if cmd == "eig":
        return {"kind": "scalar", "value": core.max_eigenvalue(A)}
    if cmd == "hull":
        if job.c is not None or (data.c is not None and k is None):
            return _interval_doc([perm.c_range_hull(A, _weights_for(job, data))])
        R = single.lambda_k(A, k, job.limit)
        return _interval_doc([] if R.is_empty() else [R.hull()])
    if cmd == "c-range":
        return _points_doc(perm.c_range(A, _weights_for(job, data)))
    if cmd == "C-range":
        return _points_doc(perm.C_range(A, _weight_matrix_for(job, data)))
    if cmd == "joint-c":
        return _points_doc(perm.joint_c_range(T, _weights_for(job, data)))
    if cmd == "joint-C":
        return _points_doc(perm.joint_C_range(T, _weight_matrix_for(job, data)))
    if cmd == "joint-exact":
        return _points_doc(perm.PointSet((joint.joint_exact_full(T),)))
    if cmd == "joint-box":
        box = joint.joint_bounding_box(T, k)
        return {"kind": "box", "label": "outer bound", "intervals": box.to_dicts()}
    if cmd == "joint-cloud":
        cloud = joint.joint_sample_cloud(T, k, job.samples, job.seed)
        if job.out is None:
            if job.format == "csv":
                return {"kind": "cloud_csv", "csv": cloud.to_csv()}
            raise InputError("joint-cloud needs --out (or --format csv to print the CSV)")
        cloud.write_csv(job.out)
        return {"kind": "cloud_csv_path", "label": "inner approximation", "path": job.out,
                "count": cloud.count, "k": k, "seed": job.seed}
    raise InputError(f"unknown command {cmd!r}")


def _csv_rows(doc: dict) -> list:
    kind = doc["kind"]
    if kind in ("interval_set", "box"):
        rows = [["lo", "lo_closed", "hi", "hi_closed"]]
        rows += [[repr(iv["lo"]), str(iv["lo_closed"]).lower(), repr(iv["hi"]),
                  str(iv["hi_closed"]).lower()] for iv in doc["intervals"]]
        return rows
    if kind == "point_set":
        dim = len(doc["points"][0]) if doc["points"] else 0
        return [[f"x{i + 1}" for i in range(dim)]] + [[repr(v) for v in p] for p in doc["points"]]
    if kind == "scalar":
        return [["value"], ["" if doc["value"] is None else repr(doc["value"])]]
    if kind == "report":
        return [["claim", "status", "failures"]] + [
            [r["claim"], r["status"], str(r["failure_count"])] for r in doc["claims"]]
    return [[f"{key}", f"{val}"] for key, val in doc.items()]


def render(doc: dict, fmt: str) -> str:
    if doc["kind"] == "cloud_csv":
        return doc["csv"]
    if fmt == "csv":
        return "".join(",".join(r) + "\n" for r in _csv_rows(doc))
    return json.dumps(doc, allow_nan=False) + "\n"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="maxnumrange",
        description="Numerical ranges of nonnegative matrices in max algebra.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("input", nargs="?", help="matrix file (JSON or plain text)")
    p.add_argument("--k", type=int, help="rank / number of isometry columns")
    p.add_argument("--c", help="weight vector, comma separated")
    p.add_argument("--C-file", dest="C_file", help="file holding the weight matrix C")
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--limit", type=int, default=DEFAULT_LIMIT,
                   help="maximum number of support families to enumerate")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", help="output path (cloud CSV, or JSONL records for verify)")
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS,
                   help="random instances per claim for verify")
    return p


def run(job: JobSpec, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        job.validate()
        doc = compute(job)
    except EnumerationLimitError as exc:
        bound = f"raise {exc.flag}" if exc.flag.startswith("--") else f"fixed bound on {exc.flag}"
        stderr.write(f"refused: {exc} [{bound}]\n")
        return EXIT_LIMIT
    except MaxAlgebraError as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_INPUT
    try:
        text = json.dumps(doc, allow_nan=False, default=oracle._jsonable)
    except ValueError:
        stderr.write("error: result is not finite (products overflow double precision)\n")
        return EXIT_INPUT
    if doc["kind"] == "report" and job.out is not None:
        with open(job.out, "w", encoding="utf-8") as fh:
            for rec in doc["claims"]:
                fh.write(json.dumps(rec, sort_keys=True, default=oracle._jsonable) + "\n")
    stdout.write(render(json.loads(text), job.format))
    if doc["kind"] == "report" and not doc["passed"]:
        return EXIT_CLAIMS_FAILED
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    job = JobSpec(**vars(args))
    return run(job)


if __name__ == "__main__":
    sys.exit(main())

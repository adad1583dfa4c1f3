"""Command-line driver: reproducible runs with CSV/JSON output.

Exit status is 0 iff every internal residual check passes ``--tol``.
"""

import argparse
import csv
import io
import json
import math
import re
import sys
from dataclasses import dataclass, field

import numpy as np

from . import bqc, encodings, extraction, fock, ssrc
from .config import CAP_ENV, ResourceError, check_cap, resource_cap

COMMANDS = ("algebra-check", "kerr-scan", "coherent-limit", "cat")


@dataclass
class RunConfig:
    command: str
    photons: list[int]
    eta: list[float] = field(default_factory=list)
    alpha: complex = 0j
    alpha_sq: list[float] | None = None
    k_max: int = 10
    out: str | None = None
    ghz_out: str | None = None
    fmt: str = "csv"
    tol: float = 1e-9
    cap: int | None = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.tol <= 0:
            raise ValueError("tolerance must be positive")
        if self.command != "algebra-check" and any(n < 1 for n in self.photons):
            raise ValueError("photon numbers must be >= 1")
        if any(n < 0 for n in self.photons):
            raise ValueError("photon numbers must be non-negative")


@dataclass
class Report:
    rows: list[dict]
    columns: list[str]
    checks: dict[str, bool]
    extra_files: dict[str, str] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


_ANGLE = re.compile(r"^\s*([-+]?[0-9.eE+-]*)\s*\*?\s*(pi)?\s*(?:/\s*([0-9.eE+-]+))?\s*$")


def parse_angle(text: str) -> float:
    """Float, or a multiple of pi such as ``pi/8``, ``3pi/4``, ``-2*pi``."""
    try:
        return float(text)
    except ValueError:
        pass
    m = _ANGLE.match(text)
    if not m or not m.group(2):
        raise argparse.ArgumentTypeError(f"cannot parse angle {text!r}")
    coef = m.group(1)
    value = float(coef) if coef not in ("", "+", "-") else (-1.0 if coef == "-" else 1.0)
    value *= math.pi
    if m.group(3):
        value /= float(m.group(3))
    return value


def parse_grid(text: str) -> list[float]:
    """``start:stop:steps`` inclusive linear grid."""
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("grid must be start:stop:steps")
    start, stop = parse_angle(parts[0]), parse_angle(parts[1])
    steps = int(parts[2])
    if steps < 1:
        raise argparse.ArgumentTypeError("grid needs at least one step")
    return [float(x) for x in np.linspace(start, stop, steps)]


def parse_int_list(text: str) -> list[int]:
    return [int(float(x)) for x in text.split(",") if x.strip()]


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_algebra_check(N: int, tol: float = 1e-9) -> Report:
    ops = ssrc.jordan_schwinger(N)
    jx, jy, jz = ops.jx, ops.jy, ops.jz
    eye = np.eye(N + 1)
    residuals = {
        "hermitian": max(float(np.max(np.abs(m - m.conj().T))) for m in (jx, jy, jz)),
        "commutator_xy": float(np.max(np.abs(jx @ jy - jy @ jx - 1j * jz))),
        "commutator_yz": float(np.max(np.abs(jy @ jz - jz @ jy - 1j * jx))),
        "commutator_zx": float(np.max(np.abs(jz @ jx - jx @ jz - 1j * jy))),
        "casimir": float(np.max(np.abs(ops.casimir() - (N / 2) * (N / 2 + 1) * eye))),
    }
    worst = 0.0
    for kind in ("rotation", "kerr"):
        for axis in ssrc.AXES:
            u = ssrc.gate_unitary(N, ssrc.GateSpec(kind, axis, 0.37))
            worst = max(worst, float(np.max(np.abs(u @ u.conj().T - eye))))
    residuals["gate_unitarity"] = worst
    rows = [
        {"check": name, "N": N, "residual": value, "passed": value <= tol}
        for name, value in residuals.items()
    ]
    checks = {r["check"]: r["passed"] for r in rows}
    return Report(rows, ["check", "N", "residual", "passed"], checks)


def cmd_kerr_scan(N: int, eta_grid, tol: float = 1e-9, cap: int | None = None) -> Report:
    check_cap(N, cap, "kerr-scan")
    rows, checks = [], {}
    for idx, eta in enumerate(eta_grid):
        res = extraction.kerr_then_project(N, eta, cap=cap)
        entropy = bqc.entanglement_entropy(res.qubits, [1])
        phase = bqc.controlled_phase_extract(res.qubits)
        expected = float(np.mod(8 * eta, 2 * np.pi))
        rows.append(
            {
                "eta": float(eta),
                "probability": res.probability,
                "entropy_bits": entropy,
                "phase_extracted": phase,
            }
        )
        checks[f"phase[{idx}]"] = bqc.phase_distance(phase, expected) <= tol
        checks[f"probability[{idx}]"] = -tol <= res.probability <= 1 + tol
    return Report(rows, ["eta", "probability", "entropy_bits", "phase_extracted"], checks)


def cmd_coherent_limit(alpha: complex, N_list, k_max: int = 10, tol: float = 1e-9) -> Report:
    N_list = sorted(N_list)
    a2 = abs(complex(alpha)) ** 2
    if not N_list or not a2 < N_list[0]:
        raise ValueError(f"|alpha|^2 = {a2} must be below every N")
    rows = []
    errs = {}
    for N in N_list:
        for k in range(min(k_max, N) + 1):
            exact = ssrc.coherent_limit_exact(N, alpha, k)
            pois = ssrc.poisson_amplitude(alpha, k)
            err = abs(exact - pois)
            errs.setdefault(k, []).append(err)
            rows.append(
                {"N": N, "k": k, "exact": abs(exact), "poisson": abs(pois), "abs_err": err}
            )
    checks = {}
    for k, seq in errs.items():
        checks[f"monotone[k={k}]"] = all(b <= a + tol * 1e-3 for a, b in zip(seq, seq[1:]))
    return Report(rows, ["N", "k", "exact", "poisson", "abs_err"], checks)


def cmd_cat(N: int, alpha_sq_grid=None, tol: float = 1e-9, cap: int | None = None) -> Report:
    if alpha_sq_grid is None:
        alpha_sq_grid = [0.0, 0.25 * N, 0.5 * N, 0.75 * N, float(N)]
    rows = encodings.overlap_rows(N, alpha_sq_grid)
    checks = {}
    for idx, row in enumerate(rows):
        bp, bm = encodings.plus_minus_modes(N, math.sqrt(row["alpha_sq"]))
        oracle = fock.inner(fock.fock_in_mode(bp, N), fock.fock_in_mode(bm, N))
        checks[f"overlap[{idx}]"] = abs(oracle - row["overlap_exact"]) <= max(tol, 1e-12)
    extra = {}
    if N >= 2:
        check_cap(N, cap, "cat extraction")
        res = encodings.cat_to_bqc(N, +1, cap=cap)
        dist = bqc.phase_aligned_distance(bqc.ghz_state(N, +1), res.qubits)
        checks["ghz"] = dist <= tol
        payload = res.to_json()
        payload["ghz_distance"] = dist
        extra["ghz"] = dumps_json(payload)
    return Report(
        rows, ["N", "alpha_sq", "overlap_exact", "overlap_gaussian_approx"], checks, extra
    )


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------

def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def render_csv(report: Report) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(report.columns)
    for row in report.rows:
        writer.writerow([_fmt(row[c]) for c in report.columns])
    return buf.getvalue()


def dumps_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def render(report: Report, fmt: str) -> str:
    if fmt == "csv":
        return render_csv(report)
    return dumps_json({"rows": report.rows, "checks": report.checks, "ok": report.ok})


def run(cfg: RunConfig) -> Report:
    if cfg.command == "algebra-check":
        reports = [cmd_algebra_check(N, cfg.tol) for N in cfg.photons]
        rows = [r for rep in reports for r in rep.rows]
        checks = {f"{k}[N={rep.rows[0]['N']}]": v for rep in reports for k, v in rep.checks.items()}
        return Report(rows, reports[0].columns, checks)
    if cfg.command == "kerr-scan":
        return cmd_kerr_scan(cfg.photons[0], cfg.eta, cfg.tol, cfg.cap)
    if cfg.command == "coherent-limit":
        return cmd_coherent_limit(cfg.alpha, cfg.photons, cfg.k_max, cfg.tol)
    return cmd_cat(cfg.photons[0], cfg.alpha_sq, cfg.tol, cfg.cap)


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", newline="") as fh:
        fh.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ssrc-bqc",
        description="Superselection-compliant boson states mapped onto a dual-rail qubit register.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", help="output file (default: stdout)")
        p.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")
        p.add_argument("--tol", type=float, default=1e-9)
        p.add_argument("--cap", type=int, default=None, help=f"photon cap (env {CAP_ENV}, default 8)")

    p = sub.add_parser("algebra-check", help="Jordan-Schwinger commutator/Casimir/unitarity checks")
    p.add_argument("--photons", type=parse_int_list, default=[1], help="N or comma list")
    common(p)

    p = sub.add_parser("kerr-scan", help="Kerr gate + extraction over an eta grid")
    p.add_argument("--photons", type=int, default=2)
    grid = p.add_mutually_exclusive_group(required=True)
    grid.add_argument("--eta", type=parse_angle)
    grid.add_argument("--eta-grid", type=parse_grid)
    common(p)

    p = sub.add_parser("coherent-limit", help="exact large-N amplitudes vs the Poisson law")
    p.add_argument("--alpha", type=complex, default=1.0)
    p.add_argument("--photons", type=parse_int_list, default=[100, 1000, 10000])
    p.add_argument("--k-max", type=int, default=10)
    common(p)

    p = sub.add_parser("cat", help="cat-code overlaps and GHZ extraction")
    p.add_argument("--photons", type=int, default=2)
    p.add_argument("--alpha-grid", type=parse_grid, default=None, help="grid over |alpha|^2")
    p.add_argument("--ghz-out", help="GHZ JSON file (default: <out>.ghz.json)")
    common(p)
    return parser


def config_from_args(args) -> RunConfig:
    photons = args.photons if isinstance(args.photons, list) else [args.photons]
    eta = []
    if args.command == "kerr-scan":
        eta = [args.eta] if args.eta is not None else args.eta_grid
    return RunConfig(
        command=args.command,
        photons=photons,
        eta=eta,
        alpha=getattr(args, "alpha", 0j),
        alpha_sq=getattr(args, "alpha_grid", None),
        k_max=getattr(args, "k_max", 10),
        out=args.out,
        ghz_out=getattr(args, "ghz_out", None),
        fmt=args.fmt,
        tol=args.tol,
        cap=resource_cap(args.cap),
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
        report = run(cfg)
    except (ResourceError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _write(cfg.out, render(report, cfg.fmt))
    if "ghz" in report.extra_files:
        target = cfg.ghz_out or (f"{cfg.out}.ghz.json" if cfg.out and cfg.out != "-" else None)
        if target:
            _write(target, report.extra_files["ghz"])
        else:
            sys.stderr.write(report.extra_files["ghz"])
    failed = [k for k, v in report.checks.items() if not v]
    if failed:
        print(f"FAILED checks: {', '.join(failed)}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

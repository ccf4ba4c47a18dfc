"""Command-line front end: ``run``, ``sweep`` and ``analytic``.

``--epr-frame-len`` counts EPR pairs (payload qubits) per EPR frame. Plots
that label the axis in units of 8 qubits need the value divided by 8.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from pathlib import Path

from .analytic import burst_transmissions, bits_per_transmission
from .errors import GewiError
from .framing import FlagMode, Stuffing
from .qsim import available_backends
from .traffic import ExperimentConfig, ExperimentResult, run_experiment

CSV_COLUMNS = [
    "B",
    "E",
    "D",
    "L",
    "mode",
    "data_payload_qubits",
    "data_bits_delivered",
    "measured_C",
    "analytic_C",
    "total_transmissions",
    "epr_pairs_generated",
    "epr_pairs_consumed",
]
ANALYTIC_COLUMNS = ["B", "E", "D", "L", "burst_transmissions", "C"]

_MODES = {"uniform": FlagMode.UNIFORM, "oracle": FlagMode.ORACLE}

# flag dest -> ExperimentConfig field
_FIELDS = {
    "burst_packets": "burst_packets",
    "packet_bits": "packet_bits",
    "epr_frames": "epr_frames",
    "epr_frame_len": "epr_frame_len",
    "cycles": "cycles",
    "warmup": "warmup_cycles",
    "mode": "mode",
    "stuffing": "stuffing",
    "capacity": "capacity",
    "seed": "seed",
}
_GRID = ("burst_packets", "epr_frames", "packet_bits", "epr_frame_len")
_SWEEPABLE = {"B": "burst_packets", "E": "epr_frames", "L": "epr_frame_len"}
_DEFAULTS = {
    "burst_packets": 1,
    "packet_bits": 168,
    "epr_frames": 10,
    "epr_frame_len": 8,
    "cycles": 3,
    "warmup": 1,
    "mode": "uniform",
    "stuffing": "strict",
    "capacity": None,
    "seed": 0,
}


class UsageError(Exception):
    pass


def parse_int_list(text) -> list[int]:
    """``"1,3,5"``, ``"0:104:8"`` (inclusive stop) or a mix; ``""`` is empty."""
    if isinstance(text, int):
        return [text]
    if isinstance(text, list):
        return [v for item in text for v in parse_int_list(item)]
    values = []
    for part in str(text).split(","):
        part = part.strip()
        if not part:
            continue
        try:
            if ":" in part:
                bits = [int(x) for x in part.split(":")]
                if len(bits) == 2:
                    bits.append(1)
                start, stop, step = bits
                if step <= 0:
                    raise ValueError
                values.extend(range(start, stop + 1, step))
            else:
                values.append(int(part))
        except ValueError:
            raise UsageError(f"bad integer list element {part!r}") from None
    return values


@dataclass
class SweepSpec:
    base: ExperimentConfig
    param: str
    values: list[int] = field(default_factory=list)
    output: str | None = None

    def __post_init__(self):
        if self.param not in _SWEEPABLE:
            raise UsageError(f"can only sweep {sorted(_SWEEPABLE)}, not {self.param!r}")

    def configs(self) -> list[ExperimentConfig]:
        name = _SWEEPABLE[self.param]
        try:
            return [self.base.with_(**{name: v}) for v in self.values]
        except ValueError as exc:
            raise UsageError(str(exc)) from None


def csv_row(result: ExperimentResult) -> list:
    cfg, agg = result.config, result.aggregate
    return [
        cfg.burst_packets,
        cfg.epr_frames,
        cfg.packet_bits,
        cfg.epr_frame_len,
        cfg.mode.value,
        agg.data_payload_qubits,
        agg.data_bits_delivered,
        f"{result.measured:.10f}",
        f"{result.analytic:.10f}",
        agg.total_transmissions,
        agg.epr_pairs_generated,
        agg.epr_pairs_consumed,
    ]


def _load_config(path) -> dict:
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    if not isinstance(raw, dict):
        raise UsageError("config file must hold a JSON object")
    return {k.replace("-", "_"): v for k, v in raw.items()}


def _settings(args) -> dict:
    """Built-in defaults < config file < explicit flags."""
    merged = dict(_DEFAULTS)
    merged.update({"param": None, "values": None, "out": None, "jobs": 1})
    if getattr(args, "config", None):
        file_values = _load_config(args.config)
        unknown = set(file_values) - set(merged)
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        merged.update(file_values)
    for key in merged:
        value = getattr(args, key, None)
        if value is not None:
            merged[key] = value
    return merged


def _scalar(settings, key):
    value = settings[key]
    if isinstance(value, (list, str)) and key in _GRID:
        values = parse_int_list(value)
        if len(values) != 1:
            raise UsageError(f"--{key.replace('_', '-')} takes a single value here")
        return values[0]
    return value


def _config(settings, **override) -> ExperimentConfig:
    kw = {}
    for key, name in _FIELDS.items():
        kw[name] = override[key] if key in override else _scalar(settings, key)
    if kw["mode"] not in _MODES and not isinstance(kw["mode"], FlagMode):
        raise UsageError(f"unknown mode {kw['mode']!r}")
    kw["mode"] = _MODES.get(kw["mode"], kw["mode"])
    try:
        return ExperimentConfig(**kw)
    except (ValueError, TypeError) as exc:
        raise UsageError(str(exc)) from None


def _check_writable(path):
    try:
        with open(path, "a", encoding="utf-8"):
            pass
    except OSError as exc:
        raise GewiError(f"cannot write {path}: {exc}") from None


def _summary(result: ExperimentResult) -> str:
    cfg = result.config
    measured = cfg.cycles - cfg.warmup_cycles
    lines = [
        f"B={cfg.burst_packets} E={cfg.epr_frames} D={cfg.packet_bits} "
        f"L={cfg.epr_frame_len} mode={cfg.mode.value} stuffing={cfg.stuffing.value} "
        f"cycles={cfg.cycles} warmup={cfg.warmup_cycles} seed={cfg.seed} "
        f"backend={result.backend}",
        f"measured bits per data qubit : {result.measured:.6f}",
        f"analytic C                   : {result.analytic:.6f}",
        f"deviation                    : {result.deviation:+.6f}",
        f"counters over {measured} measured cycle(s):",
    ]
    for key, value in result.aggregate.as_dict().items():
        lines.append(f"  {key:<22} {value}")
    lines.append(f"  {'final_buffer':<22} {result.final_buffer}")
    return "\n".join(lines)


def cmd_run(args) -> int:
    settings = _settings(args)
    cfg = _config(settings)
    if settings["out"]:
        _check_writable(settings["out"])
    result = run_experiment(cfg, backend=args.backend)
    print(_summary(result))
    if settings["out"]:
        out = Path(settings["out"])
        new = not out.exists() or out.stat().st_size == 0
        with out.open("a", encoding="utf-8", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            if new:
                w.writerow(CSV_COLUMNS)
            w.writerow(csv_row(result))
    return 0


def sweep_specs(settings) -> list[SweepSpec]:
    """Expand settings into one spec per combination of the non-swept lists.

    Without ``--param`` the L flag itself is the swept list.
    """
    param = settings["param"] or "L"
    if param not in _SWEEPABLE:
        raise UsageError(f"can only sweep {sorted(_SWEEPABLE)}, not {param!r}")
    swept = _SWEEPABLE[param]
    if settings["param"] is None:
        values = parse_int_list(settings[swept])
    elif settings["values"] is None:
        raise UsageError("--param needs --values")
    else:
        values = parse_int_list(settings["values"])
    outer = [k for k in _GRID if k != swept]
    specs = []
    for combo in itertools.product(*(parse_int_list(settings[k]) for k in outer)):
        over = dict(zip(outer, combo))
        over[swept] = values[0] if values else _DEFAULTS[swept]
        specs.append(SweepSpec(_config(settings, **over), param, values, settings["out"]))
    return specs


def write_sweep_csv(results, fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in results:
        w.writerow(csv_row(r))


def run_sweep(configs, jobs=1, backend=None) -> list[ExperimentResult]:
    run = partial(run_experiment, backend=backend)
    if jobs > 1 and len(configs) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(run, configs))
    return [run(c) for c in configs]


def cmd_sweep(args) -> int:
    settings = _settings(args)
    specs = sweep_specs(settings)
    configs = [c for spec in specs for c in spec.configs()]
    out = settings["out"]
    if out:
        _check_writable(out)
    results = run_sweep(configs, int(settings["jobs"]), args.backend)
    buf = io.StringIO()
    write_sweep_csv(results, buf)
    if out:
        Path(out).write_text(buf.getvalue(), encoding="utf-8")
        print(f"wrote {len(results)} rows to {out}", file=sys.stderr)
    else:
        sys.stdout.write(buf.getvalue())
    return 0


def cmd_analytic(args) -> int:
    settings = _settings(args)
    grid = {key: parse_int_list(settings[key]) for key in _GRID}
    rows = []
    for b in grid["burst_packets"]:
        for e in grid["epr_frames"]:
            for d in grid["packet_bits"]:
                for l in grid["epr_frame_len"]:
                    try:
                        rows.append(
                            (b, e, d, l, burst_transmissions(b, e, d, l), bits_per_transmission(b, e, d, l))
                        )
                    except ValueError as exc:
                        raise UsageError(str(exc)) from None
    out = settings["out"]
    if out:
        _check_writable(out)
        with open(out, "w", encoding="utf-8", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(ANALYTIC_COLUMNS)
            for b, e, d, l, t, c in rows:
                w.writerow([b, e, d, l, t, f"{c:.10f}"])
    else:
        for b, e, d, l, t, c in rows:
            print(f"B={b} E={e} D={d} L={l} burst_transmissions={t} C={c:.6f}")
    return 0


def _add_common(p, grid_help):
    p.add_argument("--config", help="JSON file with the same keys as the flags")
    p.add_argument("--burst-packets", dest="burst_packets", help=f"B: packets per burst{grid_help}")
    p.add_argument("--packet-bits", dest="packet_bits", help=f"D: bits per packet{grid_help}")
    p.add_argument("--epr-frames", dest="epr_frames", help=f"E: EPR frames per idle period{grid_help}")
    p.add_argument(
        "--epr-frame-len",
        dest="epr_frame_len",
        help=f"L: EPR pairs per EPR frame (raw pairs, not units of 8){grid_help}",
    )
    p.add_argument("--out", help="CSV output path")


def _add_sim(p):
    p.add_argument("--cycles", type=int)
    p.add_argument("--warmup", type=int, help="cycles excluded from the statistics")
    p.add_argument("--mode", choices=sorted(_MODES))
    p.add_argument("--stuffing", choices=[s.value for s in Stuffing])
    p.add_argument("--capacity", type=int, help="entanglement buffer capacity (default unbounded)")
    p.add_argument("--seed", type=int)
    p.add_argument("--backend", choices=available_backends(), help="amplitude kernel backend")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gewi",
        description="Simulate a link that buffers EPR pairs while idle and spends them on superdense coding.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run one experiment and print a summary")
    _add_common(run, "")
    _add_sim(run)
    run.set_defaults(func=cmd_run)

    sweep = sub.add_parser("sweep", help="run a parameter sweep and write CSV")
    _add_common(sweep, "; list or start:stop:step")
    _add_sim(sweep)
    sweep.add_argument("--param", choices=sorted(_SWEEPABLE), help="swept parameter")
    sweep.add_argument("--values", help="values for --param, e.g. 0:104:8")
    sweep.add_argument("--jobs", type=int, help="worker processes")
    sweep.set_defaults(func=cmd_sweep)

    analytic = sub.add_parser("analytic", help="evaluate the closed-form model")
    _add_common(analytic, "; list or start:stop:step")
    analytic.set_defaults(func=cmd_analytic)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except GewiError as exc:
        print(f"gewi: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

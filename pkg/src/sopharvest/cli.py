"""Command-line front end.

Subcommands ``vacuum``, ``mode``, ``partner``, ``harvest``, ``cost`` and
``sweep`` each print one deterministic table (CSV, ``%.9e``) or document
(JSON, sorted keys). Exit status: 0 on success, 2 for invalid input, 3 for a
numerical failure.
"""

import argparse
import csv
import io
import json
import sys

import numpy as np

from .energy import SWEEP_COLUMNS, build_n3, cost_coefficients, delta_e_swap, delta_e_swap_oracle, phi_sweep
from .errors import NumericalError, ParseError
from .harvest import DeviceState, harvest
from .lattice import LatticeSpec, correlators
from .modes import WindowFunctions, momentum_representation, mode_covariance, standard_form, validate_window
from .partner import classify_partner, check_locality, entanglement_entropy, partner_window

__all__ = ["run", "main", "load_mode_spec"]

FLOAT_FORMAT = "%.9e"


def _vector(doc, key, n, required):
    if key not in doc:
        if required:
            raise ParseError(f"field {key!r}: missing")
        return np.zeros(n)
    raw = doc[key]
    if isinstance(raw, dict):
        # sparse form, keys are 1-based site labels
        out = np.zeros(n)
        for site, value in raw.items():
            try:
                i = int(site)
            except (TypeError, ValueError):
                raise ParseError(f"field {key!r}: site label {site!r} is not an integer") from None
            if not 1 <= i <= n:
                raise ParseError(f"field {key!r}: site {i} outside 1..{n}")
            out[i - 1] = _number(value, key)
        return out
    if isinstance(raw, list):
        if len(raw) != n:
            raise ParseError(f"field {key!r}: expected {n} entries, got {len(raw)}")
        return np.array([_number(v, key) for v in raw])
    raise ParseError(f"field {key!r}: expected a list or an object")


def _number(value, key):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParseError(f"field {key!r}: {value!r} is not a number")
    return float(value)


def load_mode_spec(path):
    """Read a mode-spec JSON file into ``(LatticeSpec, WindowFunctions)``.

    The file holds ``{"n", "eta", "x", "y", "z", "w"}``; ``y`` and ``z`` are
    optional. Vectors are either dense lists of length ``n`` or sparse
    objects mapping 1-based site labels to values.

    Raises:
        ParseError: on unreadable or malformed input.
        NotCanonical: if ``sum(x w - z y) != 1``.
    """
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror or exc}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: top level must be an object")
    for key in ("n", "eta"):
        if key not in doc:
            raise ParseError(f"field {key!r}: missing")
    n = doc["n"]
    if isinstance(n, bool) or not isinstance(n, int):
        raise ParseError(f"field 'n': {n!r} is not an integer")
    spec = LatticeSpec(n, _number(doc["eta"], "eta"))
    win = WindowFunctions(*(_vector(doc, key, n, key in "xw") for key in "xyzw"))
    validate_window(win)
    return spec, win


def _device(text):
    try:
        q2, p2, qp = (float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected q2,p2,qp, got {text!r}") from None
    # built later so an uncertainty violation maps to the numerical exit status
    return (q2, p2, qp)


def _devices(args):
    return DeviceState(*args.dev_a), DeviceState(*args.dev_b)


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {value}")
    return value


def _positive_float(text):
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {value}")
    return value


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (np.floating, np.integer, np.bool_)):
        obj = obj.item()
    if isinstance(obj, float):
        return obj + 0.0  # drop negative zero
    return obj


def _flatten(prefix, obj, out):
    if isinstance(obj, dict):
        for k in sorted(obj):
            _flatten(f"{prefix}.{k}" if prefix else str(k), obj[k], out)
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            _flatten(f"{prefix}[{i}]", v, out)
    else:
        out.append((prefix, obj))


def _cell(value):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        return str(value)
    return FLOAT_FORMAT % value


def _write_csv(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(v) for v in row])
    return buf.getvalue()


def _render(result, fmt):
    """``result`` is either a table ``(header, rows)`` or a document dict."""
    if isinstance(result, tuple):
        header, rows = result
        if fmt == "csv":
            return _write_csv(header, rows)
        return json.dumps(_jsonable({h: [r[i] for r in rows] for i, h in enumerate(header)}),
                          sort_keys=True, indent=2) + "\n"
    doc = _jsonable(result)
    if fmt == "json":
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    flat = []
    _flatten("", doc, flat)
    return _write_csv(("key", "value"), flat)


def _cmd_vacuum(args):
    corr = correlators(LatticeSpec(args.n, args.eta))
    return ("d", "dq", "dp"), [(d, corr.dq[d], corr.dp[d]) for d in range(args.n)]


def _standard_mode(args):
    spec, win = load_mode_spec(args.spec)
    corr = correlators(spec)
    return spec, corr, win, standard_form(win, corr)


def _cmd_mode(args):
    spec, corr, win, mode = _standard_mode(args)
    qk, pk = momentum_representation(mode, spec)
    cross = np.vdot(pk, qk)
    theta, theta_prime, sigma = mode.symplectic_params
    return {
        "g": mode.g,
        "s_ee": entanglement_entropy(mode.g),
        "covariance": mode_covariance(win, corr),
        "standard_windows": {"x": mode.big_x, "y": mode.big_y, "z": mode.big_z, "w": mode.big_w},
        "prefactor": mode.prefactor,
        "theta": theta,
        "theta_prime": theta_prime,
        "sigma": sigma,
        "momentum_checks": {
            "sum_abs_q2": float(np.sum(np.abs(qk) ** 2)),
            "sum_abs_p2": float(np.sum(np.abs(pk) ** 2)),
            "sum_pstar_q_imag": float(cross.imag),
            "sum_pstar_q_real": float(cross.real),
        },
    }


def _cmd_partner(args):
    _, corr, _, mode = _standard_mode(args)
    pair = partner_window(mode, corr)
    return {
        "g": pair.g,
        "s_ee": entanglement_entropy(pair.g),
        "classification": classify_partner(pair),
        "residuals": check_locality(pair),
        "b_windows": {"x": pair.b_x, "y": pair.b_y, "z": pair.b_z, "w": pair.b_w},
        "m_ab": pair.m_ab,
        "m_ab_order": ["Q_A", "Q_B", "P_A", "P_B"],
    }


def _cmd_harvest(args):
    spec, corr, _, mode = _standard_mode(args)
    pair = partner_window(mode, corr)
    res = harvest(pair, *_devices(args), spec, corr)
    return {
        "device_covariance": res.device_covariance,
        "device_entropy": res.device_entropy,
        "field_mode_marginal": res.field_mode_marginal,
        "spectrum_check": res.spectrum_check(),
        "s_ee": entanglement_entropy(pair.g),
        "device_order": ["q_A'", "q_B'", "p_A'", "p_B'"],
    }


def _cmd_cost(args):
    model = build_n3(args.eta, args.delta)
    dev_a, dev_b = _devices(args)
    costs = cost_coefficients(model)
    doc = costs.as_dict()
    doc.update(
        eta=model.eta,
        delta=model.delta,
        c=model.c,
        g=model.g,
        omega=model.omega,
        delta_e_swap=delta_e_swap(model, dev_a, dev_b, costs),
        delta_e_swap_oracle=delta_e_swap_oracle(model.spec, model, dev_a, dev_b),
        discrepancies=costs.report,
    )
    return doc


def _cmd_sweep(args):
    values, _ = phi_sweep(args.points, delta0=args.delta0, ratio=args.ratio, n_laurent=args.npoints_laurent)
    rows = list(zip(*(values[c] for c in SWEEP_COLUMNS)))
    return SWEEP_COLUMNS, rows


def _parser():
    parser = argparse.ArgumentParser(prog="sopharvest", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, default_format, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func, format=default_format)
        p.add_argument("--out", help="write to this file instead of stdout")
        p.add_argument("--format", choices=("csv", "json"), default=default_format)
        return p

    p = add("vacuum", _cmd_vacuum, "csv", "vacuum correlators of the chain")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--eta", type=float, required=True)

    for name, func, help_text in (
        ("mode", _cmd_mode, "standard form of a local mode"),
        ("partner", _cmd_partner, "partner of a local mode"),
        ("harvest", _cmd_harvest, "swap mode and partner onto two devices"),
    ):
        p = add(name, func, "json", help_text)
        p.add_argument("--spec", required=True, help="mode-spec JSON file")
        if name == "harvest":
            p.add_argument("--dev-a", type=_device, default=(0.5, 0.5, 0.0), metavar="Q2,P2,QP")
            p.add_argument("--dev-b", type=_device, default=(0.5, 0.5, 0.0), metavar="Q2,P2,QP")

    p = add("cost", _cmd_cost, "json", "energy cost of the three-site swap")
    p.add_argument("--eta", type=_positive_float, required=True)
    p.add_argument("--delta", type=_positive_float, required=True)
    p.add_argument("--dev-a", type=_device, default=(0.5, 0.5, 0.0), metavar="Q2,P2,QP")
    p.add_argument("--dev-b", type=_device, default=(0.5, 0.5, 0.0), metavar="Q2,P2,QP")

    p = add("sweep", _cmd_sweep, "csv", "leading Laurent coefficients against phi = arctan(eta)")
    p.add_argument("--points", type=_positive_int, required=True)
    p.add_argument("--delta0", type=_positive_float, default=1e-3)
    p.add_argument("--ratio", type=_positive_float, default=2.0)
    p.add_argument("--npoints-laurent", type=_positive_int, default=6)
    return parser


def run(argv=None, stdout=None, stderr=None):
    """Run the command line and return the exit status."""
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text = _render(args.func(args), args.format)
    except NumericalError as exc:
        print(f"sopharvest {args.command}: numerical failure: {exc}", file=stderr)
        return 3
    except ValueError as exc:
        print(f"sopharvest {args.command}: invalid input: {exc}", file=stderr)
        return 2
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return 0


def main():
    sys.exit(run())

"""Command-line front end.

Pipeline: ingest CSV -> diagnostics -> fitting -> evaluation -> JSON
report and SVG charts.  Exit codes: 0 success, 2 IO or parse failure,
3 violated precondition / domain error, 4 fit did not converge (the
report is still written).  Output files contain no timestamps; wall
time goes to the stderr log only (enable with --verbose).
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from datetime import date
from pathlib import Path

import numpy as np

from . import data as _data
from . import report as _report
from .chart import ChartSpec, render_chart
from .errors import DomainError, ParseError
from .fit import LOGISTIC, OFFSET_LOGISTIC, fit_logistic, fit_offset_logistic
from .timeseries import (
    COUNT_VARIABLES,
    CUMULATIVE_VARIABLES,
    extract_series,
    parse_owid_csv,
    train_test_split,
)

log = logging.getLogger("logigrow")

EXIT_OK = 0
EXIT_IO = 2
EXIT_DOMAIN = 3
EXIT_NO_CONVERGENCE = 4

_MODEL_FLAGS = {"logistic": LOGISTIC, "logistic-offset": OFFSET_LOGISTIC}


def _iso_date(text: str) -> date:
    try:
        return date.fromisoformat(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an ISO date: {text!r}") from None


def _add_input_flags(sub):
    sub.add_argument(
        "--csv",
        type=Path,
        default=None,
        help="input CSV path (default: bundled fixture, or $LOGIGROW_FIXTURE)",
    )
    sub.add_argument("--location", default=_data.FIXTURE_LOCATION)
    sub.add_argument("--from", dest="date_from", type=_iso_date, default=None)
    sub.add_argument("--to", dest="date_to", type=_iso_date, default=None)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="logigrow",
        description="logistic growth-curve fitting and diagnostics "
        "for cumulative epidemic time series",
    )
    parser.add_argument("--verbose", action="store_true", help="log to stderr")
    commands = parser.add_subparsers(dest="command", required=True)

    p_stats = commands.add_parser("stats", help="descriptive statistics table")
    _add_input_flags(p_stats)
    p_stats.add_argument("--json", type=Path, default=None)
    p_stats.set_defaults(func=cmd_stats)

    p_test = commands.add_parser("test", help="randomness / nonlinearity tests")
    p_test.add_argument("which", choices=("ljung-box", "keenan"))
    _add_input_flags(p_test)
    p_test.add_argument("--variable", choices=COUNT_VARIABLES, default=None)
    p_test.add_argument("--lags", type=int, default=10)
    p_test.add_argument("--ar-order", type=int, default=4)
    p_test.add_argument("--alpha", type=float, default=0.05)
    p_test.add_argument("--json", type=Path, default=None)
    p_test.set_defaults(func=cmd_test)

    p_fit = commands.add_parser("fit", help="fit a growth model to total cases")
    _add_input_flags(p_fit)
    p_fit.add_argument(
        "--model", choices=tuple(_MODEL_FLAGS), default="logistic-offset"
    )
    p_fit.add_argument("--train-end", type=_iso_date, default=None)
    p_fit.add_argument("--predict-through", type=_iso_date, default=None)
    p_fit.add_argument("--svg", type=Path, default=None)
    p_fit.add_argument("--json", type=Path, default=None)
    p_fit.set_defaults(func=cmd_fit)

    p_rep = commands.add_parser("report", help="full pipeline into one report")
    _add_input_flags(p_rep)
    p_rep.add_argument("--lags", type=int, default=10)
    p_rep.add_argument("--ar-order", type=int, default=4)
    p_rep.add_argument("--alpha", type=float, default=0.05)
    p_rep.add_argument("--train-end", type=_iso_date, default=None)
    p_rep.add_argument("--predict-through", type=_iso_date, default=None)
    p_rep.add_argument("--svg", type=Path, default=None, help="directory for charts")
    p_rep.add_argument("--json", type=Path, default=None)
    p_rep.set_defaults(func=cmd_report)

    return parser


def _load_dataset(args):
    csv_path = args.csv if args.csv is not None else _data.fixture_path()
    with open(csv_path, "rb") as fh:
        dataset = parse_owid_csv(fh, args.location, args.date_from, args.date_to)
    return dataset, csv_path


def cmd_stats(args) -> int:
    dataset, csv_path = _load_dataset(args)
    rows = _report.describe_fragment(dataset)
    header = f"{'variable':<14}{'mean':>12}{'sd':>10}{'median':>12}{'min':>12}{'max':>12}{'se':>10}"
    print(header)
    for variable, d in rows.items():
        print(
            f"{variable:<14}{d['mean']:>12.2f}{d['sd']:>10.2f}"
            f"{d['median']:>12.2f}{d['min']:>12.2f}{d['max']:>12.2f}{d['se']:>10.2f}"
        )
    if args.json:
        doc = _report.build_report(
            _report.metadata_fragment(dataset, _report.file_sha256(csv_path)),
            descriptive=rows,
        )
        _report.write_report(doc, args.json)
    return EXIT_OK


def _print_ljung_box(fragment: dict) -> None:
    print(f"Ljung-Box test, variable {fragment['variable']}")
    for key in ("levels", "first_differences"):
        entry = fragment.get(key)
        if entry is None:
            continue
        print(
            f"  {key:<18} Q = {entry['statistic']:.5f}  df = {entry['df']}"
            f"  p-value = {entry['p_value']:.7f}"
        )
        print(f"  {'':<18} {entry['conclusion']}")
    note = fragment.get("note")
    if note:
        print(f"  note: {note}")


def cmd_test(args) -> int:
    dataset, csv_path = _load_dataset(args)
    tests: dict = {}
    if args.which == "ljung-box":
        variable = args.variable or "total_cases"
        series = extract_series(dataset, variable)
        fragment = _report.ljung_box_fragment(series, args.lags, args.alpha)
        tests["ljung_box"] = [fragment]
        _print_ljung_box(fragment)
    else:
        variable = args.variable or "new_cases"
        series = extract_series(dataset, variable)
        fragment = _report.keenan_fragment(series, args.ar_order, args.alpha)
        tests["keenan"] = [fragment]
        print(f"Keenan one-degree test, variable {variable}")
        print(
            f"  F = {fragment['statistic']:.5f}  df = ({fragment['df1']},"
            f" {fragment['df2']})  p-value = {fragment['p_value']:.7f}"
        )
        print(f"  {fragment['conclusion']}")
    if args.json:
        doc = _report.build_report(
            _report.metadata_fragment(dataset, _report.file_sha256(csv_path)),
            tests=tests,
        )
        _report.write_report(doc, args.json)
    return EXIT_OK


def _fit_series(series, model_kind, train_end_date, predict_through_date):
    """Fit on [start, train-end], keeping the holdout for evaluation."""
    train = test = None
    if train_end_date is not None:
        split_index = series.index_of(train_end_date) + 1
        train, test = train_test_split(series, split_index)
        if predict_through_date is not None:
            limit = series.index_of(predict_through_date)
            mask = test.t <= limit
            test = type(test)(
                label=test.label,
                start_date=test.start_date,
                t=test.t[mask],
                y=test.y[mask],
            )
        fit_on = train
    else:
        fit_on = series
    fitter = fit_logistic if model_kind == LOGISTIC else fit_offset_logistic
    result = fitter(fit_on)
    return result, train, test


def _fit_chart(series, result, test, predict_through_date) -> ChartSpec:
    t_end = int(series.t[-1])
    if predict_through_date is not None:
        t_end = max(t_end, series.index_of(predict_through_date))
    grid = np.arange(int(series.t[0]), t_end + 1, dtype=float)
    curve = result.predict(grid)
    model_name = "offset logistic" if result.model_kind == OFFSET_LOGISTIC else "logistic"
    return ChartSpec(
        title=f"{series.label} and fitted {model_name} curve",
        x_label="date",
        y_label="cases",
        data_points=tuple(zip(series.t.astype(float), series.y)),
        curve_points=tuple(zip(grid, curve)),
        data_label=series.label.replace("_", " "),
        curve_label=f"{model_name} fit",
        split_x=float(test.t[0]) if test is not None else None,
        start_date=series.start_date,
    )


def cmd_fit(args) -> int:
    dataset, csv_path = _load_dataset(args)
    series = extract_series(dataset, "total_cases")
    model_kind = _MODEL_FLAGS[args.model]
    result, train, test = _fit_series(
        series, model_kind, args.train_end, args.predict_through
    )
    fragment = _report.fit_fragment(result, series, train, test)

    print(f"model: {args.model}   converged: {result.converged}")
    print("params: " + "  ".join(f"{k} = {v:.6g}" for k, v in result.params_dict.items()))
    full = fragment["evaluation"]["full_window"]
    print(
        f"full window: mse = {full['mse']:.2f}  r_squared = {full['r_squared']:.4f}"
    )
    holdout = fragment["evaluation"].get("holdout")
    if holdout:
        print(
            f"holdout: mape = {holdout['mape']:.6f} ({holdout['mape_percent']:.4f}%)"
            f"  over t in {holdout['split']['t_range']}"
        )

    charts = []
    if args.svg:
        spec = _fit_chart(series, result, test, args.predict_through)
        args.svg.parent.mkdir(parents=True, exist_ok=True)
        args.svg.write_text(render_chart(spec), encoding="utf-8")
        charts.append(str(args.svg))
    if args.json:
        doc = _report.build_report(
            _report.metadata_fragment(dataset, _report.file_sha256(csv_path)),
            fits=[fragment],
            charts=charts,
        )
        _report.write_report(doc, args.json)
    return EXIT_OK if result.converged else EXIT_NO_CONVERGENCE


def cmd_report(args) -> int:
    dataset, csv_path = _load_dataset(args)
    descriptive = _report.describe_fragment(dataset)

    lb = [
        _report.ljung_box_fragment(
            extract_series(dataset, variable), args.lags, args.alpha
        )
        for variable in CUMULATIVE_VARIABLES
    ]
    keenan = [
        _report.keenan_fragment(
            extract_series(dataset, variable), args.ar_order, args.alpha
        )
        for variable in ("new_cases", "new_deaths")
    ]

    series = extract_series(dataset, "total_cases")
    charts: list[str] = []
    fits = []
    all_converged = True
    for model_kind in (LOGISTIC, OFFSET_LOGISTIC):
        result, train, test = _fit_series(
            series, model_kind, args.train_end, args.predict_through
        )
        fits.append(_report.fit_fragment(result, series, train, test))
        all_converged = all_converged and result.converged
        if args.svg:
            args.svg.mkdir(parents=True, exist_ok=True)
            path = args.svg / f"report_{model_kind}.svg"
            spec = _fit_chart(series, result, test, args.predict_through)
            path.write_text(render_chart(spec), encoding="utf-8")
            charts.append(str(path))

    doc = _report.build_report(
        _report.metadata_fragment(dataset, _report.file_sha256(csv_path)),
        descriptive=descriptive,
        tests={"ljung_box": lb, "keenan": keenan},
        fits=fits,
        charts=charts,
    )
    if args.json:
        _report.write_report(doc, args.json)

    print(f"location: {dataset.location}  n = {len(dataset)}")
    for fragment in lb:
        _print_ljung_box(fragment)
    for fragment in keenan:
        print(f"Keenan {fragment['variable']}: p = {fragment['p_value']:.5f}  {fragment['conclusion']}")
    for fragment in fits:
        full = fragment["evaluation"]["full_window"]
        print(
            f"fit {fragment['model']}: r_squared = {full['r_squared']:.4f}"
            f"  mse = {full['mse']:.2f}  converged = {fragment['converged']}"
        )
    return EXIT_OK if all_converged else EXIT_NO_CONVERGENCE


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.verbose:
        logging.basicConfig(stream=sys.stderr, level=logging.INFO)
    started = time.perf_counter()
    try:
        code = args.func(args)
    except (OSError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except DomainError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    log.info("%s finished in %.3f s", args.command, time.perf_counter() - started)
    return code


if __name__ == "__main__":
    sys.exit(main())

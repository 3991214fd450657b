"""Command line front end: ``cubecoupling analyze --method ...``.

Exit codes: 0 on success, 2 for input errors (bad files, labels, options),
3 for numeric errors (constant columns, null eigenvalues).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
import warnings
from dataclasses import asdict, dataclass, fields
from importlib import resources
from pathlib import Path
from typing import Optional

import numpy as np

from . import __version__
from .coinertia import coia, coia_permutation_test
from .coupling import bga, bga_permutation_test, bgcoia, costatis, statico
from .dataio import Dataset, file_checksum, load_dataset, meau_paths
from .eigen import gpca
from .errors import FixtureMissing, InputError, NumericError
from .factormap import Layer, render_map, render_panels
from .ktable import MODES, pta
from .report import AnalysisReport, write_report
from .tabular import (
    BlockDescriptor,
    DataTable,
    GroupAssignment,
    KTable,
    PairedKTables,
    Triplet,
    center_table,
    log1p_transform,
    partial_center,
    partial_standardize,
    split_blocks,
    stack_blocks,
    standardize_table,
    total_inertia,
)

log = logging.getLogger("cubecoupling")

METHODS = ("pca", "bga", "coia", "pta", "bgcoia", "statico", "costatis")
SCALE_MODES = ("none", "center", "standardize", "partial-center", "partial")
TESTED = ("bga", "coia", "costatis")
NEEDS_Y = ("coia", "bgcoia", "statico", "costatis")
NEEDS_BLOCKS = ("pta", "statico", "costatis")


class ConfigError(InputError):
    pass


@dataclass
class RunConfig:
    method: str
    table_x: str
    table_y: Optional[str] = None
    groups: Optional[str] = None
    blocks_x: Optional[str] = None
    blocks_y: Optional[str] = None
    scale_x: str = "center"
    scale_y: str = "center"
    axes: int = 2
    nperm: int = 999
    seed: Optional[int] = None
    out: str = "out"
    plots: bool = False
    interstructure: str = "cov"
    group_by: Optional[str] = None
    workers: int = 1

    def validate(self) -> "RunConfig":
        for f in fields(self):
            value = getattr(self, f.name)
            if f.name in ("axes", "nperm", "workers", "seed"):
                ok = (value is None and f.name == "seed") or (isinstance(value, int) and not isinstance(value, bool))
            elif f.name == "plots":
                ok = isinstance(value, bool)
            else:
                ok = value is None or isinstance(value, str)
            if not ok:
                raise ConfigError(f"option {f.name} has invalid value {value!r}")
        if self.method not in METHODS:
            raise ConfigError(f"unknown method {self.method!r}; choose from {', '.join(METHODS)}")
        if not self.table_x:
            raise ConfigError("--table-x is required")
        if self.method in NEEDS_Y and not self.table_y:
            raise ConfigError(f"method {self.method} needs --table-y")
        if self.method in NEEDS_BLOCKS and not self.blocks_x:
            raise ConfigError(f"method {self.method} needs --blocks-x")
        for mode in (self.scale_x, self.scale_y):
            parse_scale(mode)
        if self.method == "bga" and not (self.groups or (self.group_by and self.blocks_x)):
            raise ConfigError("method bga needs --groups, or --group-by with --blocks-x")
        if self.method == "bgcoia" and not (self.groups or self.blocks_x):
            raise ConfigError("method bgcoia needs --groups or --blocks-x")
        if self.group_by not in (None, "site", "date"):
            raise ConfigError("--group-by must be 'site' or 'date'")
        if self.axes < 1:
            raise ConfigError("--axes must be at least 1")
        if self.nperm < 0:
            raise ConfigError("--nperm must be non-negative")
        if self.method in TESTED and self.nperm > 0 and self.seed is None:
            raise ConfigError("--seed is required when --nperm > 0")
        if self.interstructure not in MODES:
            raise ConfigError(f"--interstructure must be one of {', '.join(MODES)}")
        if self.workers < 1:
            raise ConfigError("--workers must be at least 1")
        return self

    def canonical_json(self) -> str:
        d = asdict(self)
        d.pop("out")
        d.pop("plots")
        d.pop("workers")  # results do not depend on it
        return json.dumps(d, sort_keys=True)

    def digest(self) -> str:
        return hashlib.sha256(self.canonical_json().encode()).hexdigest()


def parse_scale(mode: str):
    """``[log1p+]<base>`` -> (log, base)."""
    log1p = mode.startswith("log1p+")
    base = mode[len("log1p+"):] if log1p else mode
    if base not in SCALE_MODES:
        raise ConfigError(f"unknown preprocessing {mode!r}; base must be one of {', '.join(SCALE_MODES)}")
    return log1p, base


def prepare(table: DataTable, mode: str, blocks: Optional[BlockDescriptor] = None) -> Triplet:
    """Apply a preprocessing mode to a stacked table (uniform row weights)."""
    log1p, base = parse_scale(mode)
    if log1p:
        table = log1p_transform(table)
    t = Triplet.from_table(table)
    if base == "center":
        t = center_table(t)
    elif base == "standardize":
        t = standardize_table(t)
    elif base.startswith("partial"):
        if blocks is None:
            raise ConfigError(f"preprocessing {mode!r} needs a block file")
        kt = split_blocks(t, blocks)
        kt = partial_standardize(kt) if base == "partial" else partial_center(kt)
        t = Triplet(stack_blocks(kt), t.col_metric, t.row_weights)
    return t


def align_rows(kt: KTable, labels) -> KTable:
    """Give every table of a k-table the same row labels (site names)."""
    labels = tuple(labels)
    out = []
    for name, t in zip(kt.names, kt.tables):
        if t.shape[0] != len(labels):
            raise InputError(f"block {name!r} has {t.shape[0]} rows, expected {len(labels)}")
        out.append(Triplet(DataTable(t.X, labels, t.col_labels), t.col_metric, t.row_weights))
    return KTable(tuple(out), kt.names)


def site_labels(data: Dataset, blocks: BlockDescriptor):
    n0 = blocks.sizes[0]
    if data.groups is not None:
        first = [data.groups.group_labels[i] for i in data.groups.group_of[:n0]]
        if len(set(first)) == n0:
            return first
    return [str(i + 1) for i in range(n0)]


def grouping(data: Dataset, cfg: RunConfig) -> GroupAssignment:
    if cfg.group_by == "date":
        if data.blocks_x is None:
            raise ConfigError("--group-by date needs --blocks-x")
        return GroupAssignment.from_labels([name for name, n in data.blocks_x.blocks for _ in range(n)])
    if data.groups is not None:
        return data.groups
    if data.blocks_x is None:
        raise ConfigError("no grouping available: give --groups or --blocks-x")
    return GroupAssignment.from_labels([str(i + 1) for _, n in data.blocks_x.blocks for i in range(n)])


def _axis_names(nf):
    return [f"Axis{i + 1}" for i in range(nf)]


def _stacked_labels(kt: KTable):
    return [f"{r}|{name}" for name, t in zip(kt.names, kt.tables) for r in t.row_labels]


# -- per-method runners ------------------------------------------------------


def _run_pca(cfg, data, rep, plots):
    t = prepare(data.x, cfg.scale_x, data.blocks_x)
    d = gpca(t, cfg.axes)
    ax = _axis_names(d.nf)
    rep.eigenvalues = list(d.spectrum)
    rep.add_scalar("total_inertia", total_inertia(t))
    rep.add_scalar("rank", d.rank)
    rep.add_matrix("row_scores", d.row_scores, t.row_labels, ax)
    rep.add_matrix("col_coords", d.col_coords, t.col_labels, ax)
    rep.add_matrix("axes", d.axes, t.col_labels, ax)
    if d.nf >= 2:
        plots["pca_rows.svg"] = render_map([Layer(d.row_scores, t.row_labels)], title="Rows")
        plots["pca_columns.svg"] = render_map([Layer(d.col_coords, t.col_labels, "arrow")], title="Columns")


def _run_bga(cfg, data, rep, plots):
    t = prepare(data.x, cfg.scale_x, data.blocks_x)
    g = grouping(data, cfg)
    r = bga(t, g, cfg.axes)
    ax = _axis_names(r.analysis.nf)
    rep.eigenvalues = list(r.analysis.spectrum)
    rep.add_scalar("between_inertia", r.between_inertia)
    rep.add_scalar("total_inertia", r.total_inertia)
    rep.add_scalar("ratio", r.ratio)
    rep.add_vector("group_weights", r.group_weights, g.group_labels)
    rep.add_matrix("group_scores", r.analysis.row_scores, g.group_labels, ax)
    rep.add_matrix("row_scores", r.row_scores, t.row_labels, ax)
    rep.add_matrix("col_coords", r.analysis.col_coords, t.col_labels, ax)
    if cfg.nperm > 0:
        rep.add_test("between_ratio", bga_permutation_test(t, g, cfg.nperm, seed=cfg.seed, workers=cfg.workers))
    if r.analysis.nf >= 2:
        groups = [g.group_labels[i] for i in g.group_of]
        plots["bga_rows.svg"] = render_map([Layer(r.row_scores, t.row_labels, groups=groups)], title="Rows")


def _add_coia(rep, r, row_labels, x_cols, y_cols, prefix=""):
    ax = _axis_names(r.nf)
    rep.add_scalar(prefix + "total_coinertia", r.total_coinertia)
    rep.add_scalar(prefix + "rv", r.rv)
    rep.add_vector(prefix + "covariance", r.covariance, ax)
    rep.add_vector(prefix + "correlation", r.correlation, ax)
    rep.add_matrix(prefix + "x_axes", r.x_axes, x_cols, ax)
    rep.add_matrix(prefix + "y_axes", r.y_axes, y_cols, ax)
    rep.add_matrix(prefix + "x_scores", r.x_scores, row_labels, ax)
    rep.add_matrix(prefix + "y_scores", r.y_scores, row_labels, ax)


def _run_coia(cfg, data, rep, plots):
    tx = prepare(data.x, cfg.scale_x, data.blocks_x)
    ty = prepare(data.y, cfg.scale_y, data.blocks_y or data.blocks_x)
    r = coia(tx, ty, cfg.axes)
    rep.eigenvalues = list(r.eigenvalues)
    _add_coia(rep, r, tx.row_labels, tx.col_labels, ty.col_labels)
    if cfg.nperm > 0:
        rep.add_test("total_coinertia", coia_permutation_test(tx, ty, cfg.nperm, seed=cfg.seed, workers=cfg.workers))
    if r.nf >= 2:
        plots["coia_rows.svg"] = render_map(
            [Layer(r.x_scores, tx.row_labels, "open"), Layer(r.y_scores, ty.row_labels, "filled")], title="Rows"
        )
        plots["coia_variables.svg"] = render_map(
            [Layer(r.x_axes, tx.col_labels, "arrow"), Layer(r.y_axes, ty.col_labels, "label")], title="Variables"
        )


def _add_pta(rep, res, kt, prefix=""):
    d = res.compromise.analysis
    ax = _axis_names(d.nf)
    inter = res.interstructure
    rep.add_vector(prefix + "alpha", inter.alpha, kt.names)
    rep.add_matrix(prefix + "interstructure", inter.matrix, kt.names, kt.names)
    rep.add_matrix(
        prefix + "typology",
        [[v.weight, v.cos2, v.inertia] for v in res.typology],
        kt.names,
        ["weight", "cos2", "inertia"],
    )
    rep.add_vector(prefix + "compromise_eigenvalues", d.spectrum, [f"L{i + 1}" for i in range(d.spectrum.size)])
    rep.add_matrix(prefix + "compromise_row_scores", d.row_scores, kt.tables[0].row_labels, ax)
    rep.add_matrix(prefix + "compromise_col_coords", d.col_coords, kt.col_labels, ax)
    rep.add_matrix(prefix + "intra_rows", np.vstack(res.rows), _stacked_labels(kt), ax)
    rep.add_matrix(
        prefix + "intra_cols",
        np.vstack(res.cols),
        [f"{c}|{name}" for name in kt.names for c in kt.col_labels],
        ax,
    )
    if inter.mixed_sign:
        rep.warnings.append(f"{prefix or 'pta '}compromise weights have mixed signs")


def _split_aligned(t: Triplet, blocks, data):
    kt = split_blocks(t, blocks)
    return align_rows(kt, site_labels(data, blocks))


def _run_pta(cfg, data, rep, plots):
    t = prepare(data.x, cfg.scale_x, data.blocks_x)
    kt = _split_aligned(t, data.blocks_x, data)
    res = pta(kt, cfg.interstructure, cfg.axes)
    rep.eigenvalues = list(res.eigenvalues)
    _add_pta(rep, res, kt)
    d = res.compromise.analysis
    if d.nf >= 2:
        plots["pta_compromise.svg"] = render_panels(
            [
                ("Compromise rows", [Layer(d.row_scores, kt.tables[0].row_labels)]),
                ("Compromise columns", [Layer(d.col_coords, kt.col_labels, "arrow")]),
            ]
        )
        plots["pta_intra_rows.svg"] = render_panels(
            [(name, [Layer(r, kt.tables[0].row_labels)]) for name, r in zip(kt.names, res.rows)]
        )


def _run_bgcoia(cfg, data, rep, plots):
    tx = prepare(data.x, cfg.scale_x, data.blocks_x)
    ty = prepare(data.y, cfg.scale_y, data.blocks_y or data.blocks_x)
    g = grouping(data, cfg)
    r = bgcoia(tx, ty, g, cfg.axes)
    c = r.coia
    ax = _axis_names(c.nf)
    rep.eigenvalues = list(c.eigenvalues)
    _add_coia(rep, c, g.group_labels, tx.col_labels, ty.col_labels)
    rep.add_matrix("species", c.cross.row_scores, ty.col_labels, ax)
    rep.add_matrix("env_variables", c.cross.col_coords, tx.col_labels, ax)
    rep.add_matrix("env_rows", r.env_rows, tx.row_labels, ax)
    rep.add_matrix("spe_rows", r.spe_rows, ty.row_labels, ax)
    rep.add_matrix("env_barycenters", r.env_barycenters, g.group_labels, ax)
    rep.add_matrix("spe_barycenters", r.spe_barycenters, g.group_labels, ax)
    if c.nf >= 2:
        groups = [g.group_labels[i] for i in g.group_of]
        plots["bgcoia_species.svg"] = render_map([Layer(c.cross.row_scores, ty.col_labels, "label")], title="Species")
        plots["bgcoia_variables.svg"] = render_map(
            [Layer(c.cross.col_coords, tx.col_labels, "arrow")], title="Environmental variables"
        )
        plots["bgcoia_sites.svg"] = render_map(
            [
                Layer(r.env_rows, tx.row_labels, "open", groups, "white"),
                Layer(r.spe_rows, ty.row_labels, "filled", groups, "#c0c0c0"),
            ],
            title="Sites",
        )


def _run_statico(cfg, data, rep, plots):
    bx = data.blocks_x
    by = data.blocks_y or bx
    if by.blocks != bx.blocks:
        raise ConfigError("STATICO needs the same blocks for both tables")
    tx = prepare(data.x, cfg.scale_x, bx)
    ty = prepare(data.y, cfg.scale_y, by)
    pair = PairedKTables(split_blocks(tx, bx), split_blocks(ty, by))
    r = statico(pair, cfg.interstructure, cfg.axes)
    kt = r.cross
    rep.eigenvalues = list(r.eigenvalues)
    _add_pta(rep, r.pta, kt)
    ax = _axis_names(r.x_axes.shape[1])
    rep.add_matrix("env_sites", np.vstack(r.env_sites), _stacked_labels(pair.env), ax)
    rep.add_matrix("spe_sites", np.vstack(r.spe_sites), _stacked_labels(pair.spe), ax)
    d = r.pta.compromise.analysis
    if d.nf >= 2:
        spe_names = kt.tables[0].row_labels
        plots["statico_compromise.svg"] = render_panels(
            [
                ("Environmental variables", [Layer(d.col_coords, kt.col_labels, "arrow")]),
                ("Species", [Layer(d.row_scores, spe_names, "label")]),
            ]
        )
        panels = [(f"Env {n}", [Layer(c, kt.col_labels, "arrow")]) for n, c in zip(kt.names, r.env_variables)]
        panels += [(f"Species {n}", [Layer(s, spe_names, "label")]) for n, s in zip(kt.names, r.species)]
        plots["statico_variables.svg"] = render_panels(panels, ncols=kt.k)
        panels = [(f"Env {n}", [Layer(s, t.row_labels)]) for n, s, t in zip(kt.names, r.env_sites, pair.env.tables)]
        panels += [
            (f"Species {n}", [Layer(s, t.row_labels, "filled")]) for n, s, t in zip(kt.names, r.spe_sites, pair.spe.tables)
        ]
        plots["statico_sites.svg"] = render_panels(panels, ncols=kt.k)


def _run_costatis(cfg, data, rep, plots):
    bx = data.blocks_x
    by = data.blocks_y or bx
    tx = prepare(data.x, cfg.scale_x, bx)
    ty = prepare(data.y, cfg.scale_y, by)
    kx = _split_aligned(tx, bx, data)
    ky = _split_aligned(ty, by, data)
    r = costatis(kx, ky, cfg.nperm, cfg.seed, cfg.interstructure, cfg.axes, cfg.workers)
    c = r.coia
    sites = kx.tables[0].row_labels
    ax = _axis_names(c.nf)
    rep.eigenvalues = list(c.eigenvalues)
    _add_pta(rep, r.env_pta, kx, "env_")
    _add_pta(rep, r.spe_pta, ky, "spe_")
    _add_coia(rep, c, sites, kx.col_labels, ky.col_labels)
    rep.add_matrix("env_rows", np.vstack(r.env_rows), _stacked_labels(kx), ax)
    rep.add_matrix("spe_rows", np.vstack(r.spe_rows), _stacked_labels(ky), ax)
    rep.add_matrix("env_cols", np.vstack(r.env_cols), [f"{v}|{n}" for n in kx.names for v in kx.col_labels], ax)
    rep.add_matrix("spe_cols", np.vstack(r.spe_cols), [f"{v}|{n}" for n in ky.names for v in ky.col_labels], ax)
    rep.add_matrix("env_row_barycenters", r.env_row_barycenters, sites, ax)
    rep.add_matrix("spe_row_barycenters", r.spe_row_barycenters, sites, ax)
    if r.test is not None:
        rep.add_test("total_coinertia", r.test)
    if c.nf >= 2:
        ex = np.vstack(r.env_rows)
        ey = np.vstack(r.spe_rows)
        gx = [s for _ in kx.names for s in sites]
        gy = [s for _ in ky.names for s in sites]
        plots["costatis_env.svg"] = render_map(
            [Layer(c.x_axes, kx.col_labels, "arrow"), Layer(ex, _stacked_labels(kx), "open", gx)],
            title="Sites and environmental variables",
        )
        plots["costatis_spe.svg"] = render_map(
            [Layer(c.y_axes, ky.col_labels, "label"), Layer(ey, _stacked_labels(ky), "filled", gy, "#c0c0c0")],
            title="Sites and species",
        )


RUNNERS = {
    "pca": _run_pca,
    "bga": _run_bga,
    "coia": _run_coia,
    "pta": _run_pta,
    "bgcoia": _run_bgcoia,
    "statico": _run_statico,
    "costatis": _run_costatis,
}


def run(cfg: RunConfig, write: bool = True) -> AnalysisReport:
    """Load inputs, run the analysis and (optionally) write report and plots."""
    cfg.validate()
    data = load_dataset(cfg.table_x, cfg.table_y, cfg.groups, cfg.blocks_x, cfg.blocks_y)
    rep = AnalysisReport(cfg.method)
    plots: dict = {}
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        RUNNERS[cfg.method](cfg, data, rep, plots)
    for w in caught:
        msg = str(w.message)
        if msg not in rep.warnings:
            rep.warnings.append(msg)
    inputs = {}
    for key in ("table_x", "table_y", "groups", "blocks_x", "blocks_y"):
        path = getattr(cfg, key)
        if path:
            inputs[key] = file_checksum(path)
    rep.provenance = {
        "package_version": __version__,
        "config_sha256": cfg.digest(),
        "config": json.loads(cfg.canonical_json()),
        "input_sha256": inputs,
    }
    if write:
        out = Path(cfg.out)
        written = write_report(rep, out)
        if cfg.plots:
            for name, svg in plots.items():
                (out / name).write_text(svg, encoding="utf-8")
                written.append(out / name)
        log.info("wrote %d files to %s", len(written), out)
    return rep


def load_preset(name: str) -> dict:
    text = (resources.files("cubecoupling") / "presets" / f"{name}.json").read_text(encoding="utf-8")
    return json.loads(text)


def meau_config(method: str, **overrides) -> RunConfig:
    """Run configuration for the bundled Meaudret data and its reproduction preset."""
    preset = load_preset("meau")
    if method not in preset:
        raise ConfigError(f"the meau preset has no entry for {method!r}")
    paths = meau_paths()
    missing = [str(p) for p in paths.values() if not p.is_file()]
    if missing:
        raise FixtureMissing(
            "meau fixture incomplete, missing: " + ", ".join(missing)
            + ". Export it with data/meau/export_meau.R or set CUBECOUPLING_MEAU_DIR."
        )
    settings = {**{k: str(v) for k, v in paths.items()}, **preset[method], **overrides, "method": method}
    settings["group_by"] = settings.get("group_by") if method in ("bga", "bgcoia") else None
    if settings.get("group_by") == "site":
        settings["group_by"] = None  # the sites file is the site grouping
    names = {f.name for f in fields(RunConfig)}
    return RunConfig(**{k: v for k, v in settings.items() if k in names})


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cubecoupling", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    a = sub.add_parser("analyze", help="run one analysis and write its report")
    a.add_argument("--method", choices=METHODS, required=True)
    a.add_argument("--preset", choices=["meau"], help="use the bundled Meaudret data and its preprocessing")
    a.add_argument("--config", help="JSON file with option values (command line wins)")
    a.add_argument("--table-x", dest="table_x")
    a.add_argument("--table-y", dest="table_y")
    a.add_argument("--groups")
    a.add_argument("--blocks-x", dest="blocks_x")
    a.add_argument("--blocks-y", dest="blocks_y")
    a.add_argument("--group-by", dest="group_by", choices=["site", "date"])
    a.add_argument("--scale-x", dest="scale_x", help="[log1p+]none|center|standardize|partial-center|partial")
    a.add_argument("--scale-y", dest="scale_y")
    a.add_argument("--axes", type=int)
    a.add_argument("--nperm", type=int)
    a.add_argument("--seed", type=int)
    a.add_argument("--out")
    a.add_argument("--plots", action="store_true", default=None)
    a.add_argument("--interstructure", choices=MODES)
    a.add_argument("--workers", type=int)
    return parser


def config_from_args(ns) -> RunConfig:
    given = {f.name: getattr(ns, f.name) for f in fields(RunConfig) if getattr(ns, f.name, None) is not None}
    if ns.preset == "meau":
        given.pop("method")
        return meau_config(ns.method, **given)
    settings = {}
    if ns.config:
        try:
            settings = json.loads(Path(ns.config).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{ns.config}: invalid JSON ({exc.msg})") from None
        unknown = set(settings) - {f.name for f in fields(RunConfig)}
        if unknown:
            raise ConfigError(f"{ns.config}: unknown keys {', '.join(sorted(unknown))}")
    settings.update(given)
    if not settings.get("table_x"):
        raise ConfigError("--table-x is required")
    return RunConfig(**settings)


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING, format="%(message)s")
    try:
        cfg = config_from_args(ns)
        rep = run(cfg)
    except NumericError as exc:
        print(f"cubecoupling: numeric error: {exc}", file=sys.stderr)
        return 3
    except np.linalg.LinAlgError as exc:
        print(f"cubecoupling: numeric error: {exc}", file=sys.stderr)
        return 3
    except (InputError, OSError) as exc:
        print(f"cubecoupling: input error: {exc}", file=sys.stderr)
        return 2
    head = ", ".join(f"{v:.6g}" for v in rep.eigenvalues[: cfg.axes])
    print(f"{cfg.method}: eigenvalues {head} -> {Path(cfg.out) / 'report.txt'}")
    for name, t in rep.tests.items():
        print(f"  permutation test {name}: observed {t['observed']:.6g}, p = {t['p_value']:.4g} ({t['n_perm']} perms)")
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface.

Subcommands:

* ``phimap``    phase-matching response over (q, detuning)
* ``correlate`` temporal-spatial correlation map plus ridge metrics
* ``gauss``     analytic Gaussian model parameters and map
* ``compare``   numeric map vs analytic model report
* ``image``     time-to-space projection of a temporal object
* ``sweep``     model resolution across values of one config key

Every subcommand reads an optional INI config (defaults apply when omitted)
and writes its outputs into ``--out``.  Exit codes: 0 success, 2 bad
configuration or usage, 3 physical-domain failure, 4 I/O failure.
"""

import argparse
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime, timezone

import numpy as np

from . import export
from .config import default_config, emit_config, parse_config, resolve, with_value
from .correlate import build_grid, correlation_map, extract_metrics, ghost_image
from .errors import ConfigError, DomainError
from .gaussmodel import (analytic_geometry, analytic_map, compare,
                         gaussian_params, resolution_time)
from .pdc import phi_degenerate_map


class _Outputs:
    """Tracks files created during one run so failures clean up after themselves."""

    def __init__(self, out_dir):
        self.out_dir = out_dir
        self.created = []

    def path(self, name):
        p = os.path.join(self.out_dir, name)
        self.created.append(p)
        return p

    def discard_partial(self):
        for p in self.created:
            try:
                os.unlink(p)
            except OSError:
                pass


def _load_config(path):
    if path is None:
        return default_config()
    return parse_config(path)


def _volatile(started, extra=None):
    vol = {
        "generated_utc": datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ"),
        "runtime_s": time.monotonic() - started,
    }
    if extra:
        vol.update(extra)
    return vol


def load_object(path):
    """Read a temporal-object file: CSV with header ``t_fs,T``.

    Returns (times, transmittance).  Times must be strictly increasing and
    transmittance values must lie in [0, 1].
    """
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln.strip() for ln in fh]
    rows = [ln for ln in lines if ln and not ln.startswith("#")]
    if not rows or rows[0].replace(" ", "") != "t_fs,T":
        raise ConfigError(f"object file {path}: first line must be the header 't_fs,T'")
    t_vals = []
    tr_vals = []
    for ln in rows[1:]:
        parts = ln.split(",")
        if len(parts) != 2:
            raise ConfigError(f"object file {path}: expected two columns, got {ln!r}")
        try:
            t_vals.append(float(parts[0]))
            tr_vals.append(float(parts[1]))
        except ValueError:
            raise ConfigError(f"object file {path}: non-numeric row {ln!r}") from None
    if len(t_vals) < 2:
        raise ConfigError(f"object file {path}: need at least two samples")
    t = np.asarray(t_vals)
    tr = np.asarray(tr_vals)
    if not np.all(np.isfinite(t)) or not np.all(np.isfinite(tr)):
        raise ConfigError(f"object file {path}: non-finite values")
    if np.any(np.diff(t) <= 0):
        raise ConfigError(f"object file {path}: times must be strictly increasing")
    if np.any(tr < 0) or np.any(tr > 1):
        raise ConfigError(f"object file {path}: transmittance must lie in [0, 1]")
    return t, tr


def _meta_common(setup, args):
    meta = dict(setup.echo)
    meta["cli.grid_scale"] = args.grid_scale
    return meta


def _cmd_phimap(args, setup, out):
    n_q, n_omega = setup.phimap_points
    field = phi_degenerate_map(setup.disp, n_q=n_q, n_omega=n_omega,
                               filt=setup.filt)
    export.write_phimap(out.path("phimap.csv"), field)
    meta = _meta_common(setup, args)
    meta.update(field.metadata)
    return meta, "phimap.meta"


def _build_map(args, setup):
    grid = build_grid(setup.disp, setup.pump, setup.filt,
                      grid_scale=args.grid_scale, **setup.grid_kwargs)
    cmap = correlation_map(grid, path=args.path, workers=args.workers)
    return grid, cmap


def _cmd_correlate(args, setup, out):
    grid, cmap = _build_map(args, setup)
    export.write_map_long(out.path("cmap.csv"), cmap.x1_axis, cmap.t2_axis,
                          cmap.values)
    if setup.echo.get("output.matrix"):
        export.write_map_matrix(out.path("cmap_matrix.csv"), cmap.x1_axis,
                                cmap.t2_axis, cmap.values)
    meta = _meta_common(setup, args)
    meta.update({k: v for k, v in cmap.metadata.items() if k != "workers"})
    if cmap.metadata.get("no_signal"):
        # an empty map is a legitimate result (filters can exclude everything)
        export.write_table(out.path("metrics.csv"),
                           ["x1_um", "t_peak_fs", "peak_value", "fwhm_fs",
                            "retained"], [])
    else:
        metrics = extract_metrics(cmap)
        export.write_metrics_profile(out.path("metrics.csv"), metrics)
        meta.update(export.metrics_scalars(metrics))
    return meta, "cmap.meta"


def _cmd_gauss(args, setup, out):
    params = gaussian_params(setup.disp, setup.pump, setup.filt,
                             sigma_s=setup.sigma_s)
    geom = analytic_geometry(setup.disp, setup.filt)
    grid = build_grid(setup.disp, setup.pump, setup.filt,
                      grid_scale=args.grid_scale, **setup.grid_kwargs)
    amap = analytic_map(grid.x1_axis, grid.t2_axis, params, geom)
    export.write_map_long(out.path("amap.csv"), grid.x1_axis, grid.t2_axis,
                          amap)
    res = resolution_time(params, geom.omega0)
    report = {
        "mu_c": params.mu_c,
        "sigma_mu": params.sigma_mu,
        "sigma_nu": params.sigma_nu,
        "sigma_p": params.sigma_p,
        "sigma_s": params.sigma_s,
        "D": params.D,
        "Sigma_tau": params.Sigma_tau,
        "chirp_product_2D_sigma_nu_sigma_p": 2.0 * params.D * params.sigma_nu * params.sigma_p,
        "resolution_fs": res["resolution_fs"],
        "pump_limit_fs": res["pump_limit_fs"],
        "resolution_to_pump_limit": res["ratio"],
        "band_to_response_ratio": params.validity["band_to_response_ratio"],
        "band_to_pump_ratio": params.validity["band_to_pump_ratio"],
        "narrowband_ok": params.validity["narrowband_ok"],
        "slope_fs_per_um": -params.D / (geom.omega0 * geom.x_image_scale_um),
        "peak_x1_um": params.mu_c / np.sqrt(2.0) * geom.x_image_scale_um,
        "peak_t2_fs": geom.t_test_fs - params.D * params.mu_c / np.sqrt(2.0) / geom.omega0,
    }
    export.write_meta(out.path("gparams.txt"), report)
    meta = _meta_common(setup, args)
    return meta, "amap.meta"


def _cmd_compare(args, setup, out):
    grid, cmap = _build_map(args, setup)
    params = gaussian_params(setup.disp, setup.pump, setup.filt,
                             sigma_s=setup.sigma_s)
    geom = analytic_geometry(setup.disp, setup.filt)
    report = compare(cmap, params, geom)
    export.write_meta(out.path("compare.txt"), report)
    metrics = extract_metrics(cmap)
    prof = metrics["fwhm_profile"]
    fwhm_ana = report["fwhm_ana_fs"]
    rows = []
    for i in range(prof["x1_um"].size):
        if prof["retained"][i] and np.isfinite(prof["fwhm_fs"][i]):
            rows.append((prof["x1_um"][i], prof["fwhm_fs"][i], fwhm_ana,
                         prof["fwhm_fs"][i] / fwhm_ana))
    export.write_table(out.path("fwhm_pairs.csv"),
                       ["x1_um", "fwhm_num_fs", "fwhm_ana_fs", "ratio"], rows)
    meta = _meta_common(setup, args)
    meta.update({k: v for k, v in cmap.metadata.items() if k != "workers"})
    return meta, "compare.meta"


def _cmd_image(args, setup, out):
    grid, cmap = _build_map(args, setup)
    t_obj, tr_obj = load_object(args.object)
    gate = np.interp(cmap.t2_axis, t_obj, tr_obj, left=0.0, right=0.0)
    gate = np.clip(gate, 0.0, 1.0)
    image = ghost_image(cmap, gate)
    export.write_table(out.path("image.csv"), ["x1_um", "image_norm"],
                       zip(cmap.x1_axis, image))
    meta = _meta_common(setup, args)
    meta.update({k: v for k, v in cmap.metadata.items() if k != "workers"})
    meta["image.object_file"] = os.path.basename(args.object)
    meta["image.object_samples"] = t_obj.size
    meta["image.all_zero"] = bool(not np.any(image > 0))
    return meta, "image.meta"


def _cmd_sweep(args, setup_unused, out, cfg):
    values = []
    for tok in args.values.split(","):
        tok = tok.strip()
        if not tok:
            continue
        try:
            values.append(float(tok))
        except ValueError:
            raise ConfigError(f"--values entry {tok!r} is not a number") from None
    if not values:
        raise ConfigError("--values is empty")

    def one(v):
        setup = resolve(with_value(cfg, args.key, v))
        params = gaussian_params(setup.disp, setup.pump, setup.filt,
                                 sigma_s=setup.sigma_s)
        geom = analytic_geometry(setup.disp, setup.filt)
        res = resolution_time(params, geom.omega0)
        return (v, res["resolution_fs"], res["pump_limit_fs"], res["ratio"])

    if args.workers > 1:
        with ThreadPoolExecutor(max_workers=args.workers) as pool:
            rows = list(pool.map(one, values))
    else:
        rows = [one(v) for v in values]
    export.write_table(out.path("sweep.csv"),
                       [args.key.replace(".", "_"), "resolution_fs",
                        "pump_limit_fs", "ratio"], rows)
    meta = {"sweep.key": args.key, "sweep.count": len(values)}
    return meta, "sweep.meta"


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="t2x",
        description="Temporal-spatial correlation of frequency-degenerate "
                    "photon pairs, and the time-to-space image it carries.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", default=None,
                       help="INI config file (defaults used when omitted)")
        p.add_argument("--out", required=True, help="output directory")
        p.add_argument("--grid-scale", type=float, default=1.0,
                       dest="grid_scale",
                       help="multiply the spectral lattice density")
        p.add_argument("--path", choices=("fast", "oracle"), default="fast",
                       help="synthesis route for correlation maps")
        p.add_argument("--workers", type=int, default=1,
                       help="threads for column-parallel work")

    for name, help_text in (
            ("phimap", "phase-matching response map"),
            ("correlate", "correlation map and ridge metrics"),
            ("gauss", "analytic model parameters and map"),
            ("compare", "numeric vs analytic report"),
            ("image", "time-to-space image of a temporal object"),
            ("sweep", "model resolution across one config key")):
        p = sub.add_parser(name, help=help_text)
        common(p)
        if name == "image":
            p.add_argument("--object", required=True,
                           help="temporal object file (CSV: t_fs,T)")
        if name == "sweep":
            p.add_argument("--key", required=True,
                           help="config key to vary, e.g. pump.tau_p_fs")
            p.add_argument("--values", required=True,
                           help="comma-separated values for --key")
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    started = time.monotonic()
    out = None
    try:
        cfg = _load_config(args.config)
        try:
            os.makedirs(args.out, exist_ok=True)
        except OSError as exc:
            raise OSError(f"cannot create output directory {args.out}: {exc}") from exc
        out = _Outputs(args.out)

        if args.command == "sweep":
            meta, meta_name = _cmd_sweep(args, None, out, cfg)
        else:
            setup = resolve(cfg)
            handler = {
                "phimap": _cmd_phimap,
                "correlate": _cmd_correlate,
                "gauss": _cmd_gauss,
                "compare": _cmd_compare,
                "image": _cmd_image,
            }[args.command]
            meta, meta_name = handler(args, setup, out)

        meta["cli.command"] = args.command
        meta["cli.config_echo"] = "inline" if args.config is None else os.path.basename(args.config)
        export.write_meta(out.path(meta_name), meta,
                          volatile=_volatile(started, {"workers": args.workers}))
        with open(os.path.join(args.out, "config_used.ini"), "w",
                  encoding="utf-8", newline="\n") as fh:
            fh.write(emit_config(cfg))
        return 0
    except ConfigError as exc:
        if out is not None:
            out.discard_partial()
        print(f"t2x: config error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        if out is not None:
            out.discard_partial()
        print(f"t2x: domain error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        if out is not None:
            out.discard_partial()
        print(f"t2x: i/o error: {exc}", file=sys.stderr)
        return 4


def main_entry():
    sys.exit(main(sys.argv[1:]))


if __name__ == "__main__":
    main_entry()

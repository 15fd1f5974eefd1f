"""Plain-text output writers.

Conventions shared by every produced file: comma-separated values with a
header row, floats rendered with %.9g, LF line endings, UTF-8.  Metadata
sidecars are sorted ``key = value`` lines; values that legitimately differ
between equivalent runs (wall-clock time, worker count) are written as
comment lines so the payload stays reproducible byte for byte.
"""

import numpy as np


def format_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return "%.9g" % v
    if isinstance(v, (int, np.integer)):
        return str(v)
    return str(v)


def _write_lines(path, lines):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for line in lines:
            fh.write(line)
            fh.write("\n")


def write_table(path, header, rows):
    """Generic CSV writer; every cell goes through format_value."""
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(format_value(c) for c in row))
    _write_lines(path, lines)


def write_meta(path, mapping, volatile=None):
    """key = value sidecar; volatile entries become comments."""
    lines = []
    if volatile:
        for key in sorted(volatile):
            lines.append(f"# {key} = {format_value(volatile[key])}")
    for key in sorted(mapping):
        lines.append(f"{key} = {format_value(mapping[key])}")
    _write_lines(path, lines)


def write_map_long(path, x1_axis, t2_axis, values, value_name="C_norm"):
    """Long-form map table: one row per (x1, t2) sample, x1-major."""
    lines = [f"x1_um,t2_fs,{value_name}"]
    t2_text = ["%.9g" % t for t in t2_axis]
    for ci, x1 in enumerate(x1_axis):
        x1_text = "%.9g" % x1
        row = values[ci]
        for k in range(t2_axis.size):
            lines.append(f"{x1_text},{t2_text[k]},{'%.9g' % row[k]}")
    _write_lines(path, lines)


def write_map_matrix(path, x1_axis, t2_axis, values):
    """Matrix-form map table: rows are detection times, columns positions."""
    header = ["t2_fs"] + ["%.9g" % x for x in x1_axis]
    lines = [",".join(header)]
    vt = values.T
    for k in range(t2_axis.size):
        cells = ["%.9g" % t2_axis[k]] + ["%.9g" % v for v in vt[k]]
        lines.append(",".join(cells))
    _write_lines(path, lines)


def write_phimap(path, field):
    """Long-form complex field table with nan for out-of-validity samples."""
    lines = ["q_rad_um,omega_rad_fs,re,im,abs"]
    vals = field.values
    for qi, qv in enumerate(field.q_axis):
        q_text = "%.9g" % qv
        for oi, ov in enumerate(field.omega_axis):
            z = vals[qi, oi]
            lines.append("%s,%s,%s,%s,%s" % (
                q_text, "%.9g" % ov, "%.9g" % z.real, "%.9g" % z.imag,
                "%.9g" % abs(z)))
    _write_lines(path, lines)


def write_metrics_profile(path, metrics):
    """Per-column ridge profile extracted from a correlation map."""
    prof = metrics["fwhm_profile"]
    header = ["x1_um", "t_peak_fs", "peak_value", "fwhm_fs", "retained"]
    rows = []
    for i in range(prof["x1_um"].size):
        rows.append((
            prof["x1_um"][i],
            prof["t_peak_fs"][i],
            prof["peak_value"][i],
            prof["fwhm_fs"][i],
            int(bool(prof["retained"][i])),
        ))
    write_table(path, header, rows)


def metrics_scalars(metrics) -> dict:
    """Flattened scalar metrics for a metadata sidecar."""
    fit = metrics["ridge_fit"]
    prof = metrics["fwhm_profile"]
    out = {f"metrics.ridge_{k}": v for k, v in fit.items()}
    out["metrics.fwhm_min_fs"] = prof["fwhm_min_fs"]
    out["metrics.fwhm_median_fs"] = prof["fwhm_median_fs"]
    out["metrics.fwhm_max_fs"] = prof["fwhm_max_fs"]
    out["metrics.peak_x1_um"] = metrics["peak"]["x1_um"]
    out["metrics.peak_t2_fs"] = metrics["peak"]["t2_fs"]
    out["metrics.excluded_columns"] = len(metrics["excluded_x1_um"])
    return out

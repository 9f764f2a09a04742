"""Optional figures; only imported when --figures is given."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .modular import CLSpace, modular  # noqa: E402
from .orlicz import OrliczFunction  # noqa: E402
from .vectors import SimpleVector  # noqa: E402

RC = {"figure.figsize": (6.0, 3.8), "figure.dpi": 110, "axes.grid": True, "grid.alpha": 0.3,
      "font.size": 9, "savefig.bbox": "tight"}


def _save(fig, out_dir, name) -> Path:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    path = out / f"{name}.png"
    fig.savefig(path, metadata={"Software": None})
    plt.close(fig)
    return path


def gauge_curve(cl: CLSpace, x: SimpleVector, norm: float, out_dir, name="gauge", level_is_lambda=False) -> Path:
    """``lam -> rho(x / lam)`` around the computed gauge."""
    with plt.rc_context(RC):
        fig, ax = plt.subplots()
        c = norm if norm > 0 and np.isfinite(norm) else 1.0
        lam = np.geomspace(c / 20, c * 20, 400)
        rho = np.array([modular(cl, abs(x) / float(t)) for t in lam])
        ax.loglog(lam, np.where(np.isfinite(rho), rho, np.nan), lw=1.2, label="rho(x / lam)")
        ax.loglog(lam, lam if level_is_lambda else np.ones_like(lam), "k--", lw=0.8,
                  label="lam" if level_is_lambda else "level 1")
        ax.axvline(norm, color="C3", lw=0.8, label=f"gauge = {norm:.6g}")
        ax.set_xlabel("lam")
        ax.legend(frameon=False)
        return _save(fig, out_dir, name)


def function_curve(phi: OrliczFunction, out_dir, u_min=1e-8, u_max=1e8, name="phi") -> Path:
    with plt.rc_context(RC):
        fig, ax = plt.subplots()
        u = np.geomspace(u_min, u_max, 800)
        v = phi(u)
        ax.loglog(u, np.where((v > 0) & np.isfinite(v), v, np.nan), lw=1.2)
        ax.set_xlabel("u")
        ax.set_ylabel("phi(u)")
        ax.set_title(phi.name or "phi")
        return _save(fig, out_dir, name)


def witness_panels(bundle, out_dir, name="witness") -> Path:
    with plt.rc_context(RC):
        fig, (a1, a2) = plt.subplots(1, 2, figsize=(8.0, 3.4))
        n = np.arange(1, bundle.N + 1)
        a1.semilogy(n, bundle.u, "o-", ms=3)
        a1.set_xlabel("n")
        a1.set_ylabel("u_n")
        blow = bundle.checks.get("rho_dilated", {})
        vals = [blow[k] for k in sorted(blow)]
        a2.semilogy(sorted(blow), np.where(np.isfinite(vals), vals, np.nan), "s-", ms=3,
                    label="rho((1+1/n) x)")
        a2.axhline(1.0, color="k", ls="--", lw=0.8)
        a2.axhline(bundle.checks.get("rho_x_total", np.nan) or np.nan, color="C2", lw=0.8, label="rho(x)")
        a2.set_xlabel("n")
        a2.legend(frameon=False)
        fig.suptitle(f"{bundle.variant} ({bundle.schedule})")
        return _save(fig, out_dir, name)


def blowup_curve(result: dict, out_dir, name="blowup") -> Path:
    with plt.rc_context(RC):
        fig, ax = plt.subplots()
        if result.get("curve"):
            s, r = zip(*result["curve"])
            ax.loglog(s, r, lw=1.2)
        ax.axhline(result["target"], color="C3", ls="--", lw=0.8, label="target")
        ax.set_xlabel("mu(A)")
        ax.set_ylabel("||chi_A + chi_B|| / (||chi_A|| + ||chi_B||)")
        ax.legend(frameon=False)
        return _save(fig, out_dir, name)


def suite_bars(results, out_dir, name="suite") -> Path:
    with plt.rc_context(RC):
        fig, ax = plt.subplots(figsize=(6.0, 4.2))
        ids = [r.id for r in results]
        secs = [max(r.seconds, 1e-3) for r in results]
        colors = ["C2" if r.passed else "C3" for r in results]
        ax.barh([str(i) for i in ids], secs, color=colors)
        ax.set_xscale("log")
        ax.invert_yaxis()
        ax.set_xlabel("seconds")
        ax.set_ylabel("criterion")
        return _save(fig, out_dir, name)

"""Exit criteria for the package. Run with ``pytest tests/test_acceptance.py``;
the terminal summary prints one PASS/FAIL line per criterion."""
import math
import subprocess
import sys
import time
import warnings

import numpy as np
import pytest

from biphoton.config import load_config
from biphoton.geometry import (
    BiphotonCoefficients,
    derive_biphoton_coeffs,
    heralded_from_config,
    symmetric_cloud_length,
)
from biphoton.mode_function import normalization_check, paraxial_discrepancy
from biphoton.oam import spiral_spectrum, spiral_spectrum_oracle, spiral_weight
from biphoton.schmidt import schmidt_number, schmidt_oracle_svd

from conftest import fig2, fig4


@pytest.fixture
def criterion(record_property):
    def tag(number, summary):
        record_property("criterion", number)
        record_property("summary", summary)
    return tag


def _sig(x, digits=4):
    return float(f"{x:.{digits}g}")


def test_01_normalization(criterion):
    criterion(1, "normalization = 1 +- 1e-9 on 50 random sets and 3 presets, < 10 s")
    rng = np.random.default_rng(2024)
    sets = [BiphotonCoefficients(*w) for w in 10 ** rng.uniform(2, 7, size=(50, 4))]
    sets += [derive_biphoton_coeffs(load_config(name)) for name in ("fig2", "fig3", "fig4")]
    start = time.perf_counter()
    errors = [abs(normalization_check(c) - 1.0) for c in sets]
    elapsed = time.perf_counter() - start
    assert max(errors) <= 1e-9
    assert elapsed < 10.0


def test_02_schmidt_closed_form_vs_svd(criterion):
    criterion(2, "Schmidt closed form vs SVD oracle, rel <= 1e-3 at 1024 points, 20 configs, < 60 s")
    start = time.perf_counter()
    worst = 0.0
    for deg in (0, 30, 60, 90):
        for L in (100, 200, 400, 1000, 2000):
            c = derive_biphoton_coeffs(fig4(L=float(L), phi=math.radians(deg)))
            closed = schmidt_number(c).K
            worst = max(worst, abs(schmidt_oracle_svd(c, 1024).K - closed) / closed)
    elapsed = time.perf_counter() - start
    assert worst <= 1e-3
    assert elapsed < 60.0


def test_03_schmidt_lower_bound_and_scaling(criterion):
    criterion(3, "K >= 1 on 1e4 random draws; scale invariance to 1e-12")
    rng = np.random.default_rng(3)
    draws = 10 ** rng.uniform(2, 7, size=(10_000, 4))
    scales = 10 ** rng.uniform(-6, 6, size=10_000)
    violations = 0
    worst_scale = 0.0
    for w, s in zip(draws, scales):
        c = BiphotonCoefficients(*w)
        k = schmidt_number(c).K
        violations += k < 1.0
        worst_scale = max(worst_scale, abs(schmidt_number(c.scaled(s)).K / k - 1))
    assert violations == 0
    assert worst_scale <= 1e-12


def test_04_symmetric_length_constancy(criterion):
    criterion(4, "L*(400, 100) = 69.631 um; K varies <= 1e-10 over 91 angles")
    L = symmetric_cloud_length(400.0, 100.0)
    assert round(L, 3) == 69.631
    ks = [schmidt_number(derive_biphoton_coeffs(fig2(L=L, phi=p))).K for p in np.linspace(0, math.pi / 2, 91)]
    assert (max(ks) - min(ks)) / min(ks) <= 1e-10


def test_05_regime_split(criterion):
    criterion(5, "sign of K(0) - K(90) flips at L* (bisection to 1e-6 um, fig4 preset)")

    def gap(L):
        k0 = schmidt_number(derive_biphoton_coeffs(fig4(L=L))).K
        k90 = schmidt_number(derive_biphoton_coeffs(fig4(L=L, phi=math.pi / 2))).K
        return k0 - k90

    lo, hi = 10.0, 2000.0
    assert gap(lo) > 0 > gap(hi)
    while hi - lo > 1e-6:
        mid = 0.5 * (lo + hi)
        if gap(mid) > 0:
            lo = mid
        else:
            hi = mid
    L_star = symmetric_cloud_length(1000.0, 500.0)
    assert lo <= L_star + 1e-9 and hi >= L_star - 1e-9
    assert abs(0.5 * (lo + hi) - L_star) <= 1e-6


def test_06_schmidt_anchors(criterion):
    criterion(6, "K(fig4, 0 deg) = 6.3163 and K(fig4, 90 deg, L=200) = 4.1886 to 4 significant digits")
    for cfg, anchor in ((fig4(), 6.3163), (fig4(phi=math.pi / 2, L=200.0), 4.1886)):
        c = derive_biphoton_coeffs(cfg)
        assert _sig(schmidt_number(c).K) == _sig(anchor)
        assert _sig(schmidt_oracle_svd(c, 1024).K) == _sig(anchor)


def test_07_oam_sum_rule_and_parity(criterion):
    criterion(7, "OAM residual <= 1e-6 at auto-truncation; odd weights <= 1e-12 (fig2, 0/45/90 deg)")
    for deg in (0, 45, 90):
        h = heralded_from_config(fig2(phi=math.radians(deg)))
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            s = spiral_spectrum(h)
        assert abs(s.total + s.residual - 1) < 1e-12
        assert 0 <= s.residual <= 1e-6 or abs(s.residual) <= 1e-12
        fft = spiral_spectrum_oracle(h)
        assert max(fft[m] for m in fft.weights if m % 2) <= 1e-12


def test_08_oam_collinear_limit(criterion):
    criterion(8, "P(0) = 1 +- 1e-9 at 0 deg for L in {0.5, 1, 2, 4} mm (fig2)")
    for L in (500.0, 1000.0, 2000.0, 4000.0):
        assert spiral_weight(heralded_from_config(fig2(L=L, phi=0.0)), 0) == pytest.approx(1.0, abs=1e-9)


def test_09_oam_quadrature_vs_fft(criterion):
    criterion(9, "spiral quadrature vs FFT oracle |dP| <= 1e-4 (fig2, 90 deg, L=2 mm), P(0) ~ 0.66")
    h = heralded_from_config(fig2(phi=math.pi / 2, L=2000.0))
    quad = spiral_spectrum(h)
    fft = spiral_spectrum_oracle(h)
    assert max(abs(quad[m] - fft[m]) for m in set(quad.weights) | set(fft.weights)) <= 1e-4
    # 30-digit reference 0.649741859322805; quoted as "about 0.66"
    assert quad.p0 == pytest.approx(0.649741859322805, abs=1e-12)
    assert abs(fft.p0 - 0.66) <= 0.015


def test_10_saturation(criterion):
    criterion(10, "|P0(L=10 mm) - P0(L=20 mm)| <= 0.01 at 90 deg")
    p = [spiral_weight(heralded_from_config(fig2(L=L, phi=math.pi / 2)), 0) for L in (10_000.0, 20_000.0)]
    assert abs(p[0] - p[1]) <= 0.01


@pytest.mark.slow
def test_11_paraxial_reduction(criterion):
    criterion(11, "full integral vs closed form <= 1e-2 at L=10 um, decreasing over L = 100, 50, 20, 10 um; < 5 min")
    start = time.perf_counter()
    base = load_config("fig2")
    for phi in (base.phi, math.pi / 2):
        d = [paraxial_discrepancy(fig2(L=L, phi=phi)) for L in (100.0, 50.0, 20.0, 10.0)]
        assert d[-1] <= 1e-2
        assert all(a > b for a, b in zip(d, d[1:])), d
    assert time.perf_counter() - start < 300.0


def test_12_cli_determinism(criterion, tmp_path):
    criterion(12, "sweep on fig4 twice gives byte-identical CSV; exit statuses 0/1/2")

    def cli(*args):
        return subprocess.run([sys.executable, "-m", "biphoton", *args], capture_output=True, text=True)

    outs = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for out in outs:
        res = cli("sweep", "fig4", "--var", "angle", "--from", "0", "--to", "90", "--steps", "91",
                  "--outputs", "coeffs,schmidt,oam_full", "--out", str(out))
        assert res.returncode == 0, res.stderr
    assert outs[0].read_bytes() == outs[1].read_bytes()
    assert outs[0].read_bytes().startswith(b"variable_value,A,B,C,D,F,G,K,P0,spectrum_json\n0,")

    failing = cli("sweep", "fig4", "--var", "w0", "--from", "0", "--to", "500", "--steps", "3",
                  "--outputs", "schmidt", "--out", str(tmp_path / "c.csv"))
    assert failing.returncode == 1
    bad = tmp_path / "bad.cfg"
    bad.write_text('phii = "0deg"\n')
    assert cli("schmidt", str(bad)).returncode == 2


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))

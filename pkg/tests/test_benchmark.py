import runpy
from pathlib import Path

BENCH = Path(__file__).resolve().parents[1] / "benchmarks" / "bench_kernels.py"


def test_benchmark_smoke(capsys):
    mod = runpy.run_path(str(BENCH))
    mod["main"](["--size", "500", "--repeat", "1", "--no-end-to-end"])
    out = capsys.readouterr().out
    for name in ("laguerre", "lgamma_complex", "psi_envelope", "phi_series", "neg_xlogx"):
        assert name in out
    for name, _, _, rel in mod["bench_kernels"](500, 1):
        assert rel < 1e-12, name

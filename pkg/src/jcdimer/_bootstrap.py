"""Console entry point.

Pins the BLAS thread pools to one thread (when the caller has not chosen)
before numpy loads: scenario runs are dominated by many small dense
blocks, where pool fan-out costs more than it buys.  Parallelism across
sweep points is handled with worker processes instead (--threads).
"""

import os


def main() -> int:
    for var in ("OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS", "OMP_NUM_THREADS"):
        os.environ.setdefault(var, "1")
    from .cli import main as cli_main

    return cli_main()

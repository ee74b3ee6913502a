# calibration_demo.py
"""
Runs both index routes on the calibration loops and prints the results.
Used for checking an installation against the known values 1 and 3.
"""

from hypoindex.chern_pairing import chern_index
from hypoindex.generators import calibration_instance
from hypoindex.winding_index import fredholm_index

for center in (1.0, 3.0):
    inst = calibration_instance(center=center)
    table = fredholm_index(inst)
    report = chern_index(inst)
    print(f"center {center}: windings {table.nonzero()}")
    print(f"  winding index: {table.index}")
    print(f"  chern index:   {report.total_rounded} ({report.total_real!r})")

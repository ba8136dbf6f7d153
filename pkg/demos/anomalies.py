"""Degree-4 anomaly verdicts for the built-in scenarios.

Run with ``python demos/anomalies.py``.
"""
from superobs import reproduce_paper

for name, params in (("drinfeld", {}), ("odd_m", {"m": 3, "n": 2}), ("z2n", {"n": 2})):
    report = reproduce_paper(name, **params)
    print(name, report["summary"])

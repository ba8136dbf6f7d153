"""Order of the degree-3 Q/Z generator of a cyclic group, checked by witnesses.

Run with ``python demos/cyclic_generators.py``.
"""
from superobs import coboundary, cyclic_generator_3, is_cocycle, triviality_qz

for m in (2, 3, 4):
    gen = cyclic_generator_3(m)
    assert is_cocycle(gen)
    orders = []
    for k in range(1, m + 1):
        verdict = triviality_qz(gen * k)
        if verdict.is_trivial:
            # the witness is an explicit 2-cochain whose coboundary is k * gen
            assert coboundary(verdict.witness) == gen * k
            orders.append(k)
    print(f"m={m}: first k with k*gen trivial = {orders[0]}")

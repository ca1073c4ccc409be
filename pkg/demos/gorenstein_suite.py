"""Sanity checks over the complete intersection k[x, y]/(x^2, y^2).

    python demos/gorenstein_suite.py
"""

from abdim import FieldCtx, free_module, minimal_free_resolution, p_value, residue_field, sample_modules
from abdim import total_reflexivity
from abdim.homdim import ext_table
from abdim.paperlab import ci_ring

A = ci_ring(FieldCtx.prime(5))
k = residue_field(A)
print("betti(k):", list(minimal_free_resolution(k, 10).betti))
print("Ext^i(k, k):", list(ext_table(k, k, 0, 10).dims))
print("P(k, R):", p_value(k, free_module(A, 1)))

kinds = [total_reflexivity(M, 20).kind.value for M in sample_modules(A, seed=1, count=10)]
print("G-dim of 10 random modules:", kinds)

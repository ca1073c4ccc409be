"""Over the rationals with alpha = 2 the complex never repeats.

G-dimension is still certified (on a window), while the AB-dimension must
stay undecided: there is no period to certify with.

    python demos/generic_alpha.py
"""

from abdim import ABConfig, FieldCtx, JSConfig, ab_dimension, g_dimension, js_complex, js_module
from abdim import verify_complete_resolution

cfg = JSConfig(FieldCtx.rationals(), 2, complex_window=6)
print("alpha order:", cfg.alpha_order)
rep = verify_complete_resolution(js_complex(cfg))
print(f"window d_-6..d_6: exact {rep.exact}, dual exact {rep.dual_exact}")

M = js_module(cfg)
print("G-dim:", g_dimension(M, 20).kind.value)
ab = ab_dimension(M, ABConfig(bound=20))
print("AB-dim:", ab.kind.value, "| period found:", ab.period)

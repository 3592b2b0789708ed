"""Compare smoothing factors of point, line, and block smoothers as the
anisotropy strength varies on a grid-aligned problem."""

import numpy as np

from schwarzmg.lfa import (
    smoothing_factor,
    symbol_gs,
    symbol_line_x,
    symbol_schwarz_2x2,
    symbol_schwarz_ellx1,
)
from schwarzmg.model import fd_stencil, pde_coefficients

EPSILONS = [1.0, 1e-1, 1e-2, 1e-3]
ELL = 4  # x-extent of the line-segment blocks

print("5-point stencil, theta = 0")
print("%-8s %8s %8s %8s %8s" % ("eps", "point", "line", "2x2", "%dx1" % ELL))
for eps in EPSILONS:
    st = fd_stencil(pde_coefficients(eps, 0.0))
    mus = [
        smoothing_factor(lambda w1, w2: symbol_gs(st, w1, w2)),
        smoothing_factor(lambda w1, w2: symbol_line_x(st, w1, w2)),
        smoothing_factor(lambda w1, w2: symbol_schwarz_2x2(st, w1, w2)),
        smoothing_factor(lambda w1, w2: symbol_schwarz_ellx1(st, w1, w2, ELL)),
    ]
    print("%-8g %8.4f %8.4f %8.4f %8.4f" % (eps, *mus))

# point and small-block smoothers degrade as eps -> 0 (mu -> 1), the x-line
# smoother stays at 1/sqrt(5), and longer blocks interpolate between the two
print()
print("x-line reference: 1/sqrt(5) = %.4f" % (1.0 / np.sqrt(5.0)))

"""Numeric tolerances, fixed here and imported everywhere else.

TOL_NORM guards quantities that are conserved exactly in the algebra
(norms, probability totals). TOL_EQ is for equality of states and
unitaries, always checked through fidelity or max deviation, never
componentwise against phases. TOL_PROB is the floor below which an
outcome is reported without a residual state instead of dividing by a
near-zero norm.
"""

TOL_NORM = 1e-10
TOL_EQ = 1e-9
TOL_PROB = 1e-12

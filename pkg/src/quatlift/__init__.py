"""quatlift: exact and numerical arithmetic for quaternionic theta lifts.

Subpackages cover: imaginary quadratic field data (quadfield), Hecke
characters (heckechar), local and archimedean Euler factors plus numeric
L-value evaluation (lfactors), degree-4 spinor and degree-8 convolution
factors (spinor), finite-ring character sums (charsums), zonal spherical
functions and local toral integrals (spherical), desk-scale eigenform and
quaternionic-form data (eigenforms, hurwitz), the proportionality-constant
pipeline (constants), and verification suites with a CLI (suites, cli).
"""

__version__ = "0.1.0"

"""Physical constants (SI, 2018 CODATA exact values).

Single source for the whole package; nothing else may redefine these.
"""

K_B = 1.380649e-23      # Boltzmann constant, J/K
HBAR = 1.054571817e-34  # reduced Planck constant, J*s

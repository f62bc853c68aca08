"""Unit conventions and physical constants.

Internal unit system: energies and angular frequencies in eV (hbar = 1, so
time is measured in hbar/eV), dipole moments in e*Angstrom, distances in
nm at the API boundary (converted to Angstrom internally).
"""

# Coulomb coupling constant e^2 / (4 pi eps0) expressed in eV * Angstrom.
# With dipoles in e*Angstrom and separations in Angstrom, dipole-dipole
# energies come out directly in eV.
COULOMB_EV_ANGSTROM = 14.3996

# Unit conversions
UEV = 1e-6          # micro-eV in eV
NM_TO_ANGSTROM = 10.0

# Product-basis ordering |r_alpha s_beta>:
# {|gg>, |gx>, |xg>, |gy>, |yg>, |xx>, |xy>, |yx>, |yy>}
PRODUCT_BASIS = ("gg", "gx", "xg", "gy", "yg", "xx", "xy", "yx", "yy")

# Eigenstate labels in canonical (tabulated) row order.
EIGENSTATE_LABELS = ("g", "y_A", "y_S", "x_S", "x_A", "yy", "xy_S", "xy_A", "xx")

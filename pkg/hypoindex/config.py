# config.py
"""
Default settings for every computation. The CLI exposes each entry as a flag
and echoes the effective values into its reports.
"""

DEFAULTS = {
    'clearance': 1e-6,           # minimum distance of gamma samples from odd integers
    'fock_n': 64,                # Bargmann-Fock truncation size
    'fock_t': 1.0,               # representation parameter t > 0
    'n_max': 20,                 # nilmanifold Fock blocks 1 <= |n| <= n_max
    'q_max': 40,                 # eigenvalues per Fock block, q = 0..q_max
    'lattice_max': 20,           # scalar blocks |j|, |k| <= lattice_max
    'fd_step': 1e-3,             # finite-difference step h (one Richardson step)
    'zero_tol': 1e-9,            # zero-mode detection
    'span_tol': 1e-8,            # |det| threshold for the bracket span check
    'integrality_tol': 1e-6,     # cohomological total must be this close to an integer
    'chart_half_width': 1.0,     # chart domain [-w, w]^3
    'orientation_sign': 1,       # counterclockwise-positive, fixed by calibration
    'quadrature_points': 10000,  # dense resampling for the winding oracle
    'workers': 1,                # threads for per-(loop, k) windings
}


def settings(**overrides):
    """Return a copy of DEFAULTS with overrides applied; None values are ignored"""
    merged = dict(DEFAULTS)
    for key, value in overrides.items():
        if key not in DEFAULTS:
            raise KeyError(f"Unknown setting: {key}")
        if value is not None:
            merged[key] = value
    return merged

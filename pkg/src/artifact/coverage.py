"""Which CLI invocation reaches each public operation.

Keys are "module.function"; the value is an argv list for `artifact`.  The
test suite runs every entry and checks that the function exists.
"""

MANIFEST = {
    # q-series
    "qseries.series_arith": ["series", "--name", "eta", "--op", "int_pow", "--n", "24", "--order", "5"],
    "qseries.bernoulli": ["eval", "--fn", "bernoulli", "--l", "12"],
    "qseries.divisor_sigma": ["eval", "--fn", "sigma", "--l", "3", "--n", "6"],
    "qseries.eisenstein_series": ["series", "--name", "g4_11", "--order", "4"],
    "qseries.named_form_series": ["series", "--name", "j", "--order", "3"],
    "qseries.theta_null_series": ["series", "--name", "theta10", "--order", "4"],
    "qseries.lattice_theta_series": ["series", "--name", "lattice", "--gram", "a2", "--order", "4"],
    "qseries.partition_series": ["series", "--name", "partition", "--model", "ising_R", "--order", "3"],
    "qseries.energy_mean_series": ["series", "--name", "energymean", "--model", "maxwell", "--order", "3"],
    "qseries.series_equal": ["series", "--name", "delta", "--compare", "delta_eisenstein", "--order", "8"],
    # modular group
    "modgroup.moebius_act": ["reduce", "--matrix", "0,-1,1,0", "--tau", "1/2,1"],
    "modgroup.index_act": ["reduce", "--matrix", "1,1,0,1", "--index", "1,0"],
    "modgroup.reduce_fundamental": ["reduce", "--tau", "0.3,0.2"],
    "modgroup.subgroup_member": ["reduce", "--matrix", "1,0,2,1", "--subgroup", "Gamma0(2)"],
    "modgroup.gamma_n_data": ["reduce", "--gamma-n", "5"],
    "modgroup.dim_forms": ["reduce", "--weight", "12"],
    # elliptic functions and curves
    "elliptic.p_eval": ["eval", "--fn", "p", "--k", "2", "--kappa", "1", "--lambda", "1",
                        "--zeta", "0.3,0.2", "--tau", "0,1"],
    "elliptic.weierstrass": ["eval", "--fn", "wp", "--zeta", "0.3,0.2", "--tau", "0,1"],
    "elliptic.theta_eval": ["eval", "--fn", "theta", "--kappa", "1", "--zeta", "0.2", "--tau", "0,1",
                            "--method", "product"],
    "elliptic.curve_add": ["curve", "add", "--curve", "y2=x3-x+1", "--p", "-11/9,17/27", "--q", "0,1"],
    "elliptic.quartic_reduce": ["curve", "quartic", "--roots", "0,1,2,3"],
    "elliptic.sn_from_tau": ["eval", "--fn", "sn", "--zeta", "0.2", "--tau", "0,1"],
    "elliptic.uniformize": ["curve", "uniformize", "--zeta", "0.2,0.1", "--tau", "0,1"],
    # modular forms
    "modforms.form_eval": ["eval", "--fn", "delta", "--tau", "0,1"],
    "modforms.covariance_residual": ["verify", "--suite", "modular"],
    # conformal field theory
    "cft.gegenbauer": ["eval", "--fn", "gegenbauer", "--n", "3", "--lam", "1", "--x", "0.3"],
    "cft.vacuum_2pt": ["thermal2pt", "--model", "scalar4", "--zeta12", "0.2,0.1", "--alpha", "0.13",
                       "--method", "vacuum"],
    "cft.thermal_2pt": ["thermal2pt", "--model", "scalar4", "--zeta12", "0.2,0", "--alpha", "0.13",
                        "--tau", "0,1"],
    "cft.image_sum_2pt": ["thermal2pt", "--model", "weyl4s", "--zeta12", "0.2,0.1", "--alpha", "0.13",
                          "--tau", "0,1", "--method", "image"],
    "models.degeneracy": ["energymean", "--model", "weyl4c", "--degeneracy", "5/2"],
    "cft.energy_mean": ["energymean", "--model", "maxwell", "--tau", "0,2"],
    "cft.laurent_coeffs": ["thermal2pt", "--model", "weyl", "--tau", "0.2,0.9", "--laurent", "3"],
    "cft.moving_frame": ["thermal2pt", "--model", "weyl4c", "--u1", "1,0,0,0", "--u2", "0,1,0,0", "--frame"],
    # lattices and characters
    "lattice.discriminant_group": ["chars", "--lattice", "a2", "--discriminant"],
    "lattice.voa_character": ["chars", "--lattice", "e8", "--order", "3", "--tau", "0,1"],
    "lattice.char_modular_check": ["chars", "--lattice", "a2", "--check", "--tau", "0.1,1.2"],
    "lattice.cocycle_build": ["chars", "--lattice", "a2", "--cocycle", "6"],
    "lattice.n2_character": ["chars", "--n2", "--k", "1", "--l", "1", "--m", "1", "--tau", "0,1.3"],
    "lattice.n2_smatrix": ["chars", "--n2", "--k", "2", "--smatrix"],
    # thermodynamics
    "thermo.energy_density": ["thermo", "density", "--model", "scalar4", "--beta", "1", "--R", "50"],
    "thermo.density_asymptotics": ["thermo", "density", "--model", "maxwell", "--beta", "1", "--R", "5",
                                   "--asymptotics"],
    "thermo.sb_constant": ["thermo", "sb", "--model", "maxwell"],
    "thermo.minkowski_thermal_2pt": ["thermo", "limit2pt", "--x12", "0,0.3,0,0", "--beta", "1",
                                     "--mode", "finiteR", "--R", "100"],
    "thermo.planck_spectrum": ["thermo", "planck", "--beta", "1", "--R", "10", "--n-max", "5"],
    # the command line itself
    "cli.run": ["verify", "--suite", "identities"],
}

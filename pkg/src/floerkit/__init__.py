"""floerkit: knot Floer concordance invariants, surgery cones and plumbing d-invariants.

Quick start::

    from floerkit import catalog, invariant_report, core_complex, paper_pipeline

    cable = catalog.get("cable")
    print(invariant_report(cable.complex).epsilon)        # -1

    core = core_complex(cable.complex, cable.flip)
    report = invariant_report(core)
    print(report.tau, report.epsilon, report.d)           # -1 0 -2

    print(paper_pipeline(3))                              # d=-5/2, V_0=2, theta=4
"""

from floerkit import catalog
from floerkit.complexes import dualize, tensor, validate
from floerkit.concordance import epsilon, invariant_report, nu, nu_prime, tau, upsilon, v0
from floerkit.errors import FloerkitError
from floerkit.flavors import d_invariant, n_invariant
from floerkit.flip import find_flip, verify_flip
from floerkit.models import BifilteredComplex, FlipMap, InvariantReport, PlumbingGraph
from floerkit.plumbing import d_plumbing, gamma_j, paper_pipeline
from floerkit.reduction import reduce
from floerkit.surgery import core_complex, d_of_1_over_n_surgery, hfk_hat_core, theta_probe

__all__ = [
    "BifilteredComplex",
    "FlipMap",
    "FloerkitError",
    "InvariantReport",
    "PlumbingGraph",
    "catalog",
    "core_complex",
    "d_invariant",
    "d_of_1_over_n_surgery",
    "d_plumbing",
    "dualize",
    "epsilon",
    "find_flip",
    "gamma_j",
    "hfk_hat_core",
    "invariant_report",
    "n_invariant",
    "nu",
    "nu_prime",
    "paper_pipeline",
    "reduce",
    "tau",
    "tensor",
    "theta_probe",
    "upsilon",
    "v0",
    "validate",
    "verify_flip",
]

__version__ = "0.1.0"

"""Exact gamma factors of simple supercuspidals of Sp_2l x GL_1 and their parameters.

Every function returns the same report document as the command-line tool's
JSON output: a dict with keys schema_version, inputs, exact, float, tokens,
timing and suite_results. Invalid inputs raise ValueError.
"""

import json

from . import _core

__all__ = [
    "gamma",
    "pole_scan",
    "parameter",
    "q2",
    "verify",
    "oracle",
    "suite_names",
    "hilbert_symbol",
    "weil_factor",
    "Mismatch",
]


class Mismatch(RuntimeError):
    """A comparison inside the report failed; the report is attached."""

    def __init__(self, report):
        super().__init__("mismatch: " + json.dumps(report.get("first_counterexample")))
        self.report = report


def _run(command, check, **config):
    config["command"] = command
    doc, _text, status = _core.execute(json.dumps(config))
    report = json.loads(doc)
    if check and status != 0:
        raise Mismatch(report)
    report["status"] = status
    return report


def _tau(tau_root_order, tau_root_exp, tau_rational, tau_residue):
    return dict(
        tau_root_order=tau_root_order,
        tau_root_exp=tau_root_exp,
        tau_rational=str(tau_rational),
        tau_residue=tau_residue,
    )


def gamma(p, l=2, alpha=1, omega=1, psi_sign=1, tau_root_order=1, tau_root_exp=0,
          tau_rational=1, tau_residue=0, depth=0):
    """gamma(s, pi x tau, psi) as a rational function of X = q^{-s}.

    tau(varpi) = tau_rational * zeta_{tau_root_order}^{tau_root_exp}, and tau on
    units is zeta_{q-1}^{tau_residue * log_g(u)}. depth > 0 takes both integrals
    by brute force on a grid of that depth.
    """
    return _run("gamma", False, p=p, l=l, alpha=alpha, omega=omega, psi_sign=psi_sign, depth=depth,
                **_tau(tau_root_order, tau_root_exp, tau_rational, tau_residue))


def pole_scan(p, l=2, alpha=1, omega=1, psi_sign=1):
    """Orders at s = 1 for the four quadratic tame characters; p odd."""
    return _run("pole-scan", False, p=p, l=l, alpha=alpha, omega=omega, psi_sign=psi_sign)


def parameter(p, l=2, alpha=1, omega=1, psi_sign=1, xi_reading="monomial"):
    """The parameter record; xi_reading is 'monomial' or 'coefficient'."""
    return _run("parameter", False, p=p, l=l, alpha=alpha, omega=omega, psi_sign=psi_sign,
                xi_reading=xi_reading)


def q2(l=2, psi_sign=1, tau_root_order=1, tau_root_exp=0, tau_rational=1):
    """The Q2 gamma factor compared with tau(2) 2^{1/2-s}."""
    return _run("q2", False, l=l, psi_sign=psi_sign, **_tau(tau_root_order, tau_root_exp, tau_rational, 0))


def verify(suite="all", seed=None, check=False):
    """Run an acceptance suite (or all); check=True raises Mismatch on failure."""
    cfg = dict(suite=suite)
    if seed is not None:
        cfg["seed"] = seed
    return _run("verify", check, **cfg)


def oracle(p, l=2, alpha=1, omega=1, psi_sign=1, tau_root_order=1, tau_root_exp=0,
           tau_rational=1, tau_residue=0, depth=0, check=False):
    """Brute-force Shimura integrals against the closed forms."""
    return _run("oracle", check, p=p, l=l, alpha=alpha, omega=omega, psi_sign=psi_sign, depth=depth,
                **_tau(tau_root_order, tau_root_exp, tau_rational, tau_residue))


def suite_names():
    return list(_core.suite_names())


def hilbert_symbol(p, a, b):
    """(a, b) over Q_p for nonzero rationals given as int or 'n/d' strings."""
    return _core.hilbert_symbol(p, str(a), str(b))


def weil_factor(p, a, psi_sign=1):
    """gamma_psi(a) for the standard psi; dict with 'exact' and 'float'."""
    return json.loads(_core.weil_factor(p, str(a), psi_sign))

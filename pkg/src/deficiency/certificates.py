"""Inequality certificates chaining the deficiency bounds.

A certificate is a list of steps; every step names a rule, its inputs and
its output. :func:`replay` recomputes each output from the rule alone.
"""
import json
from dataclasses import dataclass, field
from math import isqrt

from .laurent import LaurentPolynomial
from .structured import (StructuredModule, ext2_structured, format_module,
                         min_generators_lower_bound, module_rank, parse_module)

CITES = {
    "EXT2_GENERATORS": "Ext^2(M) is generated by rank(M) - def(M) elements; "
                       "specialization at <p, t - c> bounds its generator count",
    "QUOTIENT_SUMMAND": "adding N relations to a deficiency-D presentation of "
                        "H_1(W_inf) + M presents M with deficiency D - N",
    "ITERATED_COVER": "n-fold cover then infinite cyclic cover: "
                      "def(H_1) >= n*def(pi_1) - n",
    "SOLVE_FOR_DEF": "n*def - n <= D_max gives def <= floor((D_max + n)/n)",
    "HW_INEQUALITY": "index-k subgroup H of pi_1 of a compact 4-manifold with "
                     "chi = 1 and connected boundary: 2 + b2(H) - 2*b1(H) <= 2k",
}


@dataclass(frozen=True)
class Step:
    rule: str
    inputs: dict
    outputs: dict
    cite: str = ""

    def to_dict(self):
        return {"rule": self.rule, "in": self.inputs, "out": self.outputs,
                "cite": self.cite}


@dataclass(frozen=True)
class Certificate:
    inputs: dict
    steps: tuple
    quantity: str
    relation: str
    value: int
    notes: dict = field(default_factory=dict, compare=False)

    def to_dict(self):
        return {
            "inputs": self.inputs,
            "steps": [s.to_dict() for s in self.steps],
            "conclusion": {"quantity": self.quantity, "relation": self.relation,
                           "value": self.value},
        }

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, data):
        steps = tuple(Step(s["rule"], s["in"], s["out"], s.get("cite", ""))
                      for s in data["steps"])
        c = data["conclusion"]
        return cls(data["inputs"], steps, c["quantity"], c["relation"], c["value"])


def step_iterated_cover(def_W, n):
    """Lower bound ``n*def(pi_1 W) - n`` for def(H_1) of the iterated cover."""
    if n < 1:
        raise ValueError("cover degree must be at least 1")
    return n * def_W - n


def step_quotient_summand(def_total, N):
    """Lower bound ``def_total - N`` for the deficiency of the summand M."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    return def_total - N


def paper_pipeline(k, N, n=120, points=((3, -1),), extra=None):
    """Chain the bounds into ``def(pi_1(Y_k)) <= floor((N + n - k)/n)``.

    ``M_k`` is ``cyc(3, t+1)^k`` plus the optional ``extra`` summands; ``N``
    bounds the generator count of the untouched cover's homology.
    """
    if k < 0 or N < 0 or n < 1:
        raise ValueError("need k >= 0, N >= 0, n >= 1")
    points = [(int(p), int(c)) for p, c in points]
    M = StructuredModule.cyc(3, LaurentPolynomial.t() + 1, power=k)
    if extra is not None:
        M = M + extra
    rank = module_rank(M)
    mu = min_generators_lower_bound(ext2_structured(M), points)
    def_M = rank - mu
    D_max = N + def_M
    bound = (D_max + n) // n
    steps = (
        Step("EXT2_GENERATORS",
             {"module": format_module(M), "rank": rank,
              "points": [list(pc) for pc in points], "ext2_generators_lb": mu},
             {"def_M_max": def_M}, CITES["EXT2_GENERATORS"]),
        Step("QUOTIENT_SUMMAND", {"def_M_max": def_M, "N": N},
             {"D_max": D_max}, CITES["QUOTIENT_SUMMAND"]),
        Step("ITERATED_COVER", {"n": n},
             {"D_min": f"{n}*def - {n}"}, CITES["ITERATED_COVER"]),
        Step("SOLVE_FOR_DEF", {"D_max": D_max, "n": n},
             {"def_max": bound}, CITES["SOLVE_FOR_DEF"]),
    )
    inputs = {"k": k, "N": N, "n": n, "points": [list(pc) for pc in points]}
    if extra is not None:
        inputs["extra"] = format_module(extra)
    return Certificate(inputs, steps, "def(pi1(Y_k))", "<=", bound)


def hw_inequality(beta1, beta2, k):
    """True iff ``2 + beta2 - 2*beta1 <= 2k`` (no obstruction)."""
    if k < 1:
        raise ValueError("index must be at least 1")
    return 2 + beta2 - 2 * beta1 <= 2 * k


HW_SEARCH_CAP = 10 ** 6


def hw_family_violation(beta1_coeffs, beta2_coeffs, k_index, cap=HW_SEARCH_CAP):
    """Smallest k in ``1..cap`` at which the inequality fails, or ``None``.

    ``beta1(k) = a0 + a1*k`` and ``beta2(k) = b0 + b1*k + b2*k^2``; the
    subgroup index ``k_index`` does not depend on k.
    """
    a0, a1 = beta1_coeffs
    b0, b1, b2 = beta2_coeffs
    # excess(k) = A k^2 + B k + C > 0 means a violation
    A, B, C = b2, b1 - 2 * a1, 2 + b0 - 2 * a0 - 2 * k_index

    def excess(x):
        return (A * x + B) * x + C

    def first_from(x):
        # excess is increasing from x on; step to the first positive value
        while x <= cap and excess(x) <= 0:
            x += 1
        return x if x <= cap else None

    if excess(1) > 0:
        return 1
    if A == 0:
        if B <= 0:
            return None
        x = max(1, -C // B)
        while x > 1 and excess(x - 1) > 0:
            x -= 1
        return first_from(x)
    disc = B * B - 4 * A * C
    if disc < 0:
        return None
    if A > 0:
        # positive beyond the larger root
        x = max(1, (-B + isqrt(disc)) // (2 * A) - 1)
        while x > 1 and excess(x - 1) > 0:
            x -= 1
        return first_from(x)
    # A < 0: positive only strictly between the roots
    vertex = -B / (2 * A)
    if vertex <= 1:
        return None
    x = max(1, (-B + isqrt(disc)) // (2 * A) - 1)
    while x > 1 and excess(x - 1) > 0:
        x -= 1
    while x <= cap and x <= vertex + 1 and excess(x) <= 0:
        x += 1
    return x if x <= cap and excess(x) > 0 else None


def obstruction_certificate(beta1_coeffs, beta2_coeffs, k_index, cap=HW_SEARCH_CAP):
    """Certificate naming the first parameter where the Betti inequality fails."""
    k = hw_family_violation(beta1_coeffs, beta2_coeffs, k_index, cap)
    inputs = {"beta1_coeffs": list(beta1_coeffs), "beta2_coeffs": list(beta2_coeffs),
              "index": k_index, "cap": cap}
    if k is None:
        return Certificate(inputs, (), "first_violating_k", ">", cap)
    a0, a1 = beta1_coeffs
    b0, b1, b2 = beta2_coeffs
    beta1 = a0 + a1 * k
    beta2 = b0 + b1 * k + b2 * k * k
    step = Step("HW_INEQUALITY", {"beta1": beta1, "beta2": beta2, "index": k_index},
                {"lhs": 2 + beta2 - 2 * beta1, "rhs": 2 * k_index,
                 "holds": hw_inequality(beta1, beta2, k_index)},
                CITES["HW_INEQUALITY"])
    return Certificate(inputs, (step,), "first_violating_k", "<=", k)


# ---------------------------------------------------------------------------
# independent replay
# ---------------------------------------------------------------------------

class ReplayError(AssertionError):
    pass


def _fiber_count(module_text, p, c):
    """Generator bound of Ext^2 at one point, evaluated piece by piece."""
    M = parse_module(module_text)
    count = 0
    for m, f in M.cyclic2:
        mv = m.constant_value() % p
        fv = sum(a * pow(c % p, e % (p - 1), p) for e, a in f.terms) % p
        if mv == 0 and fv == 0:
            count += 1
    return count


def replay(cert):
    """Re-derive each step of ``cert`` from its rule; raise on any mismatch."""
    known = dict(cert.inputs)
    for i, s in enumerate(cert.steps):
        inp, out = s.inputs, s.outputs

        def need(name):
            if name not in known:
                raise ReplayError(f"step {i} ({s.rule}) uses {name!r} before it is derived")
            if known[name] != inp[name]:
                raise ReplayError(f"step {i} ({s.rule}): {name}={inp[name]} "
                                  f"but earlier value is {known[name]}")

        if s.rule == "EXT2_GENERATORS":
            M = parse_module(inp["module"])
            rank = M.free_rank
            if rank != inp["rank"]:
                raise ReplayError(f"step {i}: rank {inp['rank']} != {rank}")
            mu = max((_fiber_count(inp["module"], p, c) for p, c in inp["points"]),
                     default=0)
            if mu != inp["ext2_generators_lb"]:
                raise ReplayError(f"step {i}: Ext^2 bound {inp['ext2_generators_lb']} != {mu}")
            expect = {"def_M_max": rank - mu}
        elif s.rule == "QUOTIENT_SUMMAND":
            for name in ("def_M_max", "N"):
                need(name)
            expect = {"D_max": inp["N"] + inp["def_M_max"]}
        elif s.rule == "ITERATED_COVER":
            need("n")
            expect = {"D_min": f"{inp['n']}*def - {inp['n']}"}
        elif s.rule == "SOLVE_FOR_DEF":
            for name in ("D_max", "n"):
                need(name)
            expect = {"def_max": (inp["D_max"] + inp["n"]) // inp["n"]}
        elif s.rule == "HW_INEQUALITY":
            lhs = 2 + inp["beta2"] - 2 * inp["beta1"]
            expect = {"lhs": lhs, "rhs": 2 * inp["index"],
                      "holds": lhs <= 2 * inp["index"]}
        else:
            raise ReplayError(f"step {i}: unknown rule {s.rule!r}")
        if out != expect:
            raise ReplayError(f"step {i} ({s.rule}): recorded {out}, recomputed {expect}")
        known.update(out)
    final = {"SOLVE_FOR_DEF": "def_max"}
    if cert.steps:
        last = cert.steps[-1]
        key = final.get(last.rule)
        if key is not None and known[key] != cert.value:
            raise ReplayError(f"conclusion {cert.value} != derived {known[key]}")
        if last.rule == "HW_INEQUALITY" and known["holds"]:
            raise ReplayError("inequality holds; no violation certified")
    return True

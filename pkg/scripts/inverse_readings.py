"""Solve every shipped reading of the inverse-semigroup binary system and
report the solution sets side by side, at several size bounds."""
import time
from dataclasses import asdict, dataclass, field

from catauto.derived import candidate_terms, render_assignment, solve_term_equations
from catauto.formats import load_system
from catauto.varieties import InverseSemigroup

from _common import emit, load_config


@dataclass
class Config:
    systems: list = field(default_factory=lambda: [
        "systems/inverse_binary_nested_literal.eqs",
        "systems/inverse_binary_flat_literal.eqs",
        "systems/inverse_binary_nested_idempotent.eqs",
        "systems/inverse_binary_flat_idempotent.eqs",
        "systems/inverse_binary_nested_only.eqs",
    ])
    sizes: list = field(default_factory=lambda: [6, 8])
    target: list = field(default_factory=lambda: ["(mul x1 x2)", "(mul x2 x1)"])


def main():
    cfg, out = load_config(Config, __doc__)
    rows = []
    for n in cfg.sizes:
        pool = len(candidate_terms(InverseSemigroup, 2, n))
        for path in cfg.systems:
            sys_ = load_system(path)
            t = time.perf_counter()
            ws = sorted(render_assignment(a)["w"] for a in solve_term_equations(sys_, n))
            rows.append({"system": sys_.name, "max_size": n, "candidates": pool, "solutions": ws,
                         "matches_target": ws == sorted(cfg.target),
                         "seconds": round(time.perf_counter() - t, 2)})
    emit({"config": asdict(cfg), "results": rows}, out)


if __name__ == "__main__":
    main()

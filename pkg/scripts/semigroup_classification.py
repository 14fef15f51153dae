"""Binary and unary derived operations of free semigroups and free inverse
semigroups, as a function of the search bound."""
from dataclasses import asdict, dataclass, field

from catauto.derived import render_assignment, solve_term_equations
from catauto.formats import load_system

from _common import emit, load_config


@dataclass
class Config:
    runs: list = field(default_factory=lambda: [
        ["systems/semigroup_binary.eqs", [3, 5, 7]],
        ["systems/inverse_unary_involution.eqs", [5, 7, 9]],
        ["systems/inverse_unary_antihom.eqs", [5, 7, 9]],
    ])
    raw_terms: bool = False


def main():
    cfg, out = load_config(Config, __doc__)
    rows = []
    for path, sizes in cfg.runs:
        sys_ = load_system(path)
        for n in sizes:
            sols = solve_term_equations(sys_, n, distinct=not cfg.raw_terms)
            rows.append({"system": sys_.name, "max_size": n, "count": len(sols),
                         "solutions": [render_assignment(a) for a in sols]})
    emit({"config": asdict(cfg), "results": rows}, out)


if __name__ == "__main__":
    main()

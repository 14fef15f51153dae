"""Automorphism groups of small transformation monoids, with timings and a
brute-force cross-check where the carrier is small enough."""
import time
from dataclasses import asdict, dataclass, field

from catauto import finite

from _common import emit, load_config


@dataclass
class Config:
    cases: list = field(default_factory=lambda: [[1, False], [2, False], [3, False],
                                                 [2, True], [3, True]])
    brute_force_limit: int = 9


def main():
    cfg, out = load_config(Config, __doc__)
    rows = []
    for n, partial in cfg.cases:
        M = finite.transformation_monoid(n, partial)
        t = time.perf_counter()
        v = finite.check_automorphisms_inner(M, n, partial)
        row = {**v.to_json(), "size": M.size, "generators": len(finite.generating_set(M)),
               "seconds": round(time.perf_counter() - t, 3)}
        if M.size <= cfg.brute_force_limit:
            row["brute_force_agrees"] = (sorted(finite.automorphisms_bruteforce(M))
                                         == sorted(v.automorphisms))
        rows.append(row)
    emit({"config": asdict(cfg), "results": rows}, out)


if __name__ == "__main__":
    main()

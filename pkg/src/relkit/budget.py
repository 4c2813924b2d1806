from __future__ import annotations

from dataclasses import dataclass


class BudgetExceeded(RuntimeError):
    """Refusal to compute beyond a configured budget.

    ``flag`` names the CLI option to raise; ``needed`` is a value that
    would suffice when it is known.
    """

    def __init__(self, what: str, flag: str, limit, needed=None):
        msg = f"{what}: exceeds {flag}={limit}"
        if needed is not None:
            msg += f" (needs {needed})"
        super().__init__(msg)
        self.what = what
        self.flag = flag
        self.limit = limit
        self.needed = needed


@dataclass(frozen=True)
class Budget:
    max_degree_exact: int = 13  # exact invariance groups / closures
    scan_budget: int = 1 << 24  # masks swept by a full power-set scan
    regset_budget: int = 1 << 20  # 2**n * len(gens) for exhaustive regular sets
    enum_budget: int = 10**7  # group elements streamed
    search_nodes: int = 5_000_000  # backtrack nodes per invariance-group call
    union_budget: int = 1 << 22  # orbit unions examined by the RG decision
    subgroup_order: int = 2000  # subgroup lattice enumeration bound
    coset_budget: int = 5000  # right cosets listed for an index computation

    def check_degree(self, n: int, what: str) -> None:
        if n > self.max_degree_exact:
            raise BudgetExceeded(what, "--max-degree-exact", self.max_degree_exact, n)


DEFAULT = Budget()

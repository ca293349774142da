from __future__ import annotations

import numpy as np

from src.netpart.config import Config
from src.netpart.core.problem import Block, Consumer, PartitionProblem, Provider, Switch
from src.netpart.exception import InputError
from src.netpart.logger import logging


def _money(x: float) -> float:
    return float(round(x, 2))


def _switch_pairs(rng: np.random.Generator, n: int, density: float, switches: int | None,
                  connected: bool) -> list[tuple[int, int]]:
    order = rng.permutation(n)
    tree = [tuple(sorted((int(order[k]), int(order[rng.integers(k)])))) for k in range(1, n)]
    max_pairs = n * (n - 1) // 2
    if switches is None:
        extra = int(round(density * (max_pairs - (n - 1))))
        switches = (n - 1) + extra
    if switches < n - 1:
        if connected:
            raise InputError(f"{switches} switches cannot connect {n} blocks")
        return tree[:switches]

    in_tree = set(tree)
    others = [(i, j) for i in range(n) for j in range(i + 1, n) if (i, j) not in in_tree]
    rng.shuffle(others)
    pairs = tree + others[:switches - len(tree)]
    while len(pairs) < switches:
        # parallel switches once every pair is used
        pairs.append(pairs[int(rng.integers(len(pairs)))])
    return pairs


def generate_instance(blocks: int, density: float = 0.3, providers: int | None = None, seed: int = 0,
                      switches: int | None = None, connected: bool = True, kappa: int = Config.default_kappa,
                      nu: float = Config.default_nu, gamma: float = Config.default_gamma) -> PartitionProblem:
    """Random block network, deterministic in `seed`.

    A random spanning tree keeps the switch graph connected; `density` adds
    that fraction of the remaining block pairs. `switches` fixes the switch
    count instead. Total capacity is drawn between 0.6 and 1.4 times the total
    demand so that both full service and shedding show up across seeds.
    """
    if blocks < 1:
        raise InputError("an instance needs at least one block")
    if not 0.0 <= density <= 1.0:
        raise InputError(f"switch density {density} outside [0, 1]")
    rng = np.random.default_rng(seed)
    n = blocks
    pairs = _switch_pairs(rng, n, density, switches, connected) if n > 1 else []
    if n == 1 and switches:
        raise InputError("a single block cannot hold switches")

    consumers: list[list[Consumer]] = [[] for _ in range(n)]
    for p in range(n):
        for c in range(int(rng.integers(0, 3))):
            consumers[p].append(Consumer(id=f"m{p + 1}_{c}", demand=_money(rng.uniform(1.0, 5.0))))
    total_demand = sum(m.demand for row in consumers for m in row)

    count = providers if providers is not None else max(1, n // 2)
    if count < 1:
        raise InputError("an instance needs at least one provider")
    hosts = rng.choice(n, size=count, replace=count > n)
    shares = rng.dirichlet(np.ones(count))
    capacity = rng.uniform(0.6, 1.4) * max(total_demand, 1.0)
    owned: list[list[Provider]] = [[] for _ in range(n)]
    for k, host in enumerate(hosts):
        c_max = max(_money(capacity * shares[k]), 0.01)
        c_min = _money(0.1 * c_max) if rng.random() < 0.2 else 0.0
        owned[int(host)].append(Provider(
            id=f"g{k + 1}", c_min=c_min, c_max=c_max,
            leader_eligible=bool(k == 0 or rng.random() < 0.5),
            cost=_money(rng.uniform(0.5, 2.0)),
        ))

    problem = PartitionProblem(
        blocks=tuple(Block(id=p + 1, providers=tuple(owned[p]), consumers=tuple(consumers[p])) for p in range(n)),
        switches=tuple(Switch(from_block=i + 1, to_block=j + 1,
                              r_max=max(_money(rng.uniform(0.3, 1.0) * max(total_demand, 1.0)), 0.01),
                              label=f"s{k}")
                       for k, (i, j) in enumerate(pairs)),
        kappa=kappa, nu=nu, gamma=gamma,
    )
    logging.info(f"generated instance seed={seed}: {n} blocks, {len(pairs)} switches, {count} providers, "
                 f"{len(problem.eligible_leaders)} eligible leaders")
    return problem

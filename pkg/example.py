import asyncio
import logging

from nottingham_torsion.characters import parse_character_literal
from nottingham_torsion.equivalence import (StrictEquivalenceOracle, WeakEquivalenceOracle, apartition_reduced_forms,
                                            bound_B, power_conjugacy_oracle)
from nottingham_torsion.reduction import reduce, verify_witness
from nottingham_torsion.utils.config import load_settings

settings = load_settings()
logging.basicConfig(level=settings.log_level)


def example_reduce():
    chi = parse_character_literal("1:1,2:3,4:3", 3)
    form, witness = reduce(chi)
    print(form.to_character().as_dict(), witness.u, verify_witness(chi, form.to_character(), witness.u))


def example_strict_search():
    oracle = StrictEquivalenceOracle(settings.budget)
    chi = parse_character_literal("5:1,15:2", 2)
    psi = parse_character_literal("5:1,11:2,15:2", 2)
    witness = oracle.search(chi, psi)
    print(witness.u if witness else "not strictly equivalent")


async def example_async_search():
    strict = StrictEquivalenceOracle(settings.budget)
    weak = WeakEquivalenceOracle(settings.budget)
    chi = parse_character_literal("1:1,4:3", 3)
    psi = parse_character_literal("1:2,4:3", 3)
    print(await strict.asearch(chi, psi), await weak.asearch(chi, psi))


def example_power_conjugacy():
    chi = parse_character_literal("1:1,4:3", 3)
    conjugate, witness = power_conjugacy_oracle(chi, 4, settings.budget)
    print(conjugate, witness.u if witness else None)


async def example_async_classify():
    report = await apartition_reduced_forms(2, 3, 6, settings.budget, jobs=settings.jobs)
    print(f"{report.class_count} classes, bound {bound_B(2, 3, 6)}")
    for cls in report.classes:
        print(cls.representative.as_dict(), len(cls.members))


if __name__ == "__main__":
    # example_strict_search()
    example_reduce()
    asyncio.run(example_async_classify())

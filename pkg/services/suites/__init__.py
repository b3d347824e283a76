import importlib
from typing import TYPE_CHECKING

from services.verify import UnknownSuiteError

if TYPE_CHECKING:
    from services.suites.base import VerificationSuite

SUITE_LABELS = {
    "presentation": "Presentation relations under embed",
    "involutions": "ψ and σ images of the presentation",
    "bkl": "BKL relation and its rewritten forms",
    "recursion": "Recursion between consecutive ỹ",
    "serre_lusztig": "Serre–Lusztig vanishing and closed forms",
    "rank1": "Rank-one commutation formulas",
    "higher_serre": "Serre–Lusztig relations for the standard Serre relation",
    "braid_conjecture": "Conjectural braid operators",
    "scalars": "Scalar identities",
    "oracle": "Radical-form oracle vs Serre-basis reduction",
    "engine": "Engine properties",
    "mutation": "Mutation sensitivity",
}

SUITE_IDS = list(SUITE_LABELS.keys())

_SUITE_MAP = {
    "presentation": ("services.suites.presentation", "PresentationSuite"),
    "involutions": ("services.suites.involutions", "InvolutionsSuite"),
    "bkl": ("services.suites.bkl", "BKLSuite"),
    "recursion": ("services.suites.recursion", "RecursionSuite"),
    "serre_lusztig": ("services.suites.serre_lusztig", "SerreLusztigSuite"),
    "rank1": ("services.suites.rank1", "RankOneSuite"),
    "higher_serre": ("services.suites.higher_serre", "HigherSerreSuite"),
    "braid_conjecture": ("services.suites.braid_conjecture", "BraidConjectureSuite"),
    "scalars": ("services.suites.scalar_identities", "ScalarIdentitiesSuite"),
    "oracle": ("services.suites.oracle", "OracleSuite"),
    "engine": ("services.suites.engine", "EngineSuite"),
    "mutation": ("services.suites.mutation", "MutationSuite"),
}


def get_suite(suite_id: str) -> "VerificationSuite":
    if suite_id not in _SUITE_MAP:
        raise UnknownSuiteError(f"Unknown suite: {suite_id} (choose from {', '.join(SUITE_IDS)}, all)")

    module_name, class_name = _SUITE_MAP[suite_id]
    module = importlib.import_module(module_name)
    suite_class = getattr(module, class_name)
    return suite_class()

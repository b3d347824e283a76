from abc import ABC, abstractmethod

from core.cartan import CartanDatum
from services.verify import CheckCase, SuiteSpec


class VerificationSuite(ABC):
    @property
    @abstractmethod
    def suite_id(self) -> str:
        pass

    @property
    @abstractmethod
    def description(self) -> str:
        pass

    @abstractmethod
    def cases(self, spec: SuiteSpec) -> list[CheckCase]:
        pass

    def orbit_nodes(self, datum: CartanDatum) -> list[int]:
        """Smallest label of every τ-orbit of size two."""
        return [i for i in datum.labels if datum.tau_of(i) > i]

    def label(self, *parts: object) -> str:
        return ":".join([self.suite_id, *(str(p) for p in parts)])

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: object

    def __str__(self):
        return f"{self.axiom}: {self.witness!r}"


@dataclass
class Report:
    """Collected axiom violations; an empty report means the structure is valid."""

    subject: str = ""
    violations: list = field(default_factory=list)

    def add(self, axiom, witness):
        self.violations.append(Violation(axiom, witness))

    def extend(self, other: Report, prefix=""):
        for v in other.violations:
            self.violations.append(Violation(prefix + v.axiom, v.witness))

    @property
    def ok(self) -> bool:
        return not self.violations

    def axioms(self) -> set:
        return {v.axiom for v in self.violations}

    def first(self, axiom):
        for v in self.violations:
            if v.axiom == axiom:
                return v
        return None

    def __iter__(self):
        return iter(self.violations)

    def __len__(self):
        return len(self.violations)

    def __str__(self):
        if self.ok:
            return f"{self.subject or 'structure'}: valid"
        lines = [f"{self.subject or 'structure'}: {len(self)} violation(s)"]
        lines += [f"  {v}" for v in self.violations]
        return "\n".join(lines)

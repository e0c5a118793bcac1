"""Named residuals with tolerances and verdicts."""

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Residual:
    name: str
    value: float
    tolerance: float
    # "abs": pass iff |value| <= tolerance; "margin": pass iff value > tolerance
    mode: str = "abs"

    @property
    def passed(self) -> bool:
        # NaN never passes
        if self.mode == "margin":
            return bool(self.value > self.tolerance)
        return bool(abs(self.value) <= self.tolerance)


@dataclass
class ResidualReport:
    """Ordered collection of residuals; passes iff every entry passes."""

    entries: dict = field(default_factory=dict)
    notes: dict = field(default_factory=dict)

    def add(self, name, value, tolerance):
        self.entries[name] = Residual(name, float(value), float(tolerance))
        return self

    def add_margin(self, name, margin, floor=0.0):
        """Record a signed margin that must stay strictly above ``floor``."""
        self.entries[name] = Residual(name, float(margin), float(floor), "margin")
        return self

    def __getitem__(self, name):
        return self.entries[name]

    def __contains__(self, name):
        return name in self.entries

    def __iter__(self):
        return iter(self.entries.values())

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.entries.values())

    def failures(self):
        return [r.name for r in self.entries.values() if not r.passed]

    def merge(self, other, prefix=""):
        for r in other:
            self.entries[prefix + r.name] = Residual(prefix + r.name, r.value, r.tolerance, r.mode)
        return self

    def as_dict(self):
        out = {}
        for r in self.entries.values():
            if r.mode == "margin":
                out[r.name] = {"margin": r.value, "floor": r.tolerance, "pass": r.passed}
            else:
                out[r.name] = {"max_abs": abs(r.value), "tolerance": r.tolerance, "pass": r.passed}
        return out

    def __str__(self):
        lines = []
        for r in self.entries.values():
            flag = "PASS" if r.passed else "FAIL"
            if r.mode == "margin":
                lines.append(f"{flag}  {r.name:<32s} margin {r.value:+.3e}")
            else:
                lines.append(f"{flag}  {r.name:<32s} {abs(r.value):.3e}  (tol {r.tolerance:.1e})")
        return "\n".join(lines)

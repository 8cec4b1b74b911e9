"""Check results and reports shared by the verification suites."""

from __future__ import annotations


class Check:
    """Outcome of a single named verification.

    ``status`` is one of ``pass``, ``fail``, ``skipped``, ``declined``.
    ``witness`` holds a human-readable counterexample or reason.
    """

    def __init__(self, name, status, witness=None, detail=None):
        if status not in ("pass", "fail", "skipped", "declined"):
            raise ValueError(f"bad status {status!r}")
        self.name = name
        self.status = status
        self.witness = witness
        self.detail = detail

    @property
    def passed(self):
        return self.status == "pass"

    def as_dict(self):
        d = {"name": self.name, "status": self.status}
        if self.witness is not None:
            d["witness"] = self.witness
        if self.detail is not None:
            d["detail"] = self.detail
        return d

    def __repr__(self):
        w = f" [{self.witness}]" if self.witness else ""
        return f"<{self.status}: {self.name}{w}>"


class Report:
    """Ordered collection of checks plus named dimension tables."""

    def __init__(self, title=""):
        self.title = title
        self.checks = []
        self.tables = {}

    def add(self, name, ok, witness=None, detail=None):
        self.checks.append(Check(name, "pass" if ok else "fail", witness if not ok else None, detail))
        return ok

    def add_check(self, check):
        self.checks.append(check)

    def skip(self, name, reason):
        self.checks.append(Check(name, "skipped", reason))

    def decline(self, name, reason):
        self.checks.append(Check(name, "declined", reason))

    def add_table(self, name, values):
        self.tables[name] = list(values)

    @property
    def failures(self):
        return [c for c in self.checks if c.status == "fail"]

    @property
    def all_passed(self):
        return not self.failures

    def as_dict(self):
        return {
            "title": self.title,
            "checks": [c.as_dict() for c in self.checks],
            "tables": {k: [str(v) for v in vs] for k, vs in self.tables.items()},
        }

    def merge(self, other, prefix=""):
        for c in other.checks:
            self.checks.append(
                Check((prefix + c.name) if prefix else c.name, c.status, c.witness, c.detail)
            )
        for k, v in other.tables.items():
            self.tables[(prefix + k) if prefix else k] = v

    def __repr__(self):
        n_fail = len(self.failures)
        return f"<Report {self.title!r}: {len(self.checks)} checks, {n_fail} failing>"

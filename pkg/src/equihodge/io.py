"""Problem-description documents: parsing, validation, and object building.

Documents are JSON with all numbers encoded as integers or "p/q" strings;
floating point is rejected so that every downstream computation stays exact.
Every validation failure carries a path into the document.

Blocks:

* ``group``:  {"kind": "finite-table", "elements": [names], "mult": [[int]]}
              or {"kind": "free-abelian", "rank": d, "chi": ["p/q", ...]}
* ``space``:  {"kind": "simplicial", "vertices": [names], "simplices": [[names]]}
              or {"kind": "finite-set", "points": [names]}
              or {"kind": "periodic-simplicial", "rank": d,
                  "vertex_orbits": [names],
                  "cells": [{"name": n, "slots": [[orbit, [offsets]], ...]}]}
* ``action``: {generator name: {vertex/point name: image name}}; omitted for
              periodic spaces (the group acts by translation).
* ``algebra``: {"kind": "functions" | "exterior" | "cochain"}; optional.
* ``cutoff``: {simplex id: "p/q"}; ids are vertex names, "v1|v2|..." for
              higher simplices, and "cell@(k1,..,kd)" for periodic instances.
* ``weight``: {simplex id: "p/q"} per-simplex twist scaling; periodic ids are
              bare cell names (the weight is invariant).
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction

from .algebras import build_exterior_algebra, build_function_algebra
from .complexes import (
    FiniteEquivariantComplex,
    PeriodicEquivariantComplex,
    vertex_maps_from_generators,
)
from .groups import FiniteGroup, FreeAbelianGroup
from .hodge import Cutoff
from .twisted import TwistFamily, uniform_twist

ONE = Fraction(1)


class DocumentError(ValueError):
    """Validation failure with a path into the offending document node."""

    def __init__(self, path, message):
        self.path = path
        super().__init__(f"{path}: {message}")


def parse_rational(value, path):
    if isinstance(value, bool):
        raise DocumentError(path, "expected a rational, got a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise DocumentError(path, "floating point is not accepted; use \"p/q\" strings")
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as e:
            raise DocumentError(path, f"bad rational {value!r}: {e}") from None
    raise DocumentError(path, f"expected a rational, got {type(value).__name__}")


def format_rational(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _need(obj, key, path, kind=None):
    if key not in obj:
        raise DocumentError(f"{path}.{key}", "missing")
    v = obj[key]
    if kind is not None and not isinstance(v, kind):
        raise DocumentError(f"{path}.{key}", f"expected {kind.__name__}")
    return v


class ProblemDescription:
    """Validated document plus the built core objects."""

    def __init__(self, doc):
        if not isinstance(doc, dict):
            raise DocumentError("$", "document must be a JSON object")
        self.doc = doc
        self.name = doc.get("name", "unnamed")
        self.group = self._build_group()
        self.space_kind = None
        self.complex = None
        self.points = None
        self._build_space()
        self.algebra_kind = None
        if "algebra" in doc:
            kind = _need(doc["algebra"], "kind", "algebra", str)
            if kind not in ("functions", "exterior", "cochain"):
                raise DocumentError("algebra.kind", f"unknown algebra kind {kind!r}")
            self.algebra_kind = kind
        elif self.space_kind in ("simplicial", "periodic-simplicial"):
            self.algebra_kind = "cochain"

    # -- group ------------------------------------------------------------

    def _build_group(self):
        doc = self.doc
        g = _need(doc, "group", "$", dict)
        kind = _need(g, "kind", "group", str)
        if kind == "finite-table":
            elements = _need(g, "elements", "group", list)
            mult = _need(g, "mult", "group", list)
            n = len(elements)
            if len(mult) != n or any(not isinstance(r, list) or len(r) != n for r in mult):
                raise DocumentError("group.mult", f"expected an {n}x{n} index matrix")
            for i, row in enumerate(mult):
                for j, v in enumerate(row):
                    if not isinstance(v, int) or not 0 <= v < n:
                        raise DocumentError(f"group.mult[{i}][{j}]", "index out of range")
            if "chi" in g:
                for name, val in g["chi"].items():
                    if parse_rational(val, f"group.chi.{name}") != 1:
                        raise DocumentError(
                            f"group.chi.{name}",
                            "finite groups admit only the trivial modular weight",
                        )
            try:
                return FiniteGroup(mult, names=[str(e) for e in elements])
            except ValueError as e:
                raise DocumentError("group.mult", str(e)) from None
        if kind == "free-abelian":
            rank = _need(g, "rank", "group", int)
            chi = g.get("chi")
            bases = None
            if chi is not None:
                if not isinstance(chi, list) or len(chi) != rank:
                    raise DocumentError("group.chi", f"expected a list of {rank} rationals")
                bases = [parse_rational(c, f"group.chi[{i}]") for i, c in enumerate(chi)]
            try:
                return FreeAbelianGroup(rank, chi_bases=bases)
            except ValueError as e:
                raise DocumentError("group", str(e)) from None
        raise DocumentError("group.kind", f"unknown group kind {kind!r}")

    # -- space and action ----------------------------------------------------

    def _generator_maps(self, names, path):
        """Translate the action block to index maps over ``names``."""
        action = self.doc.get("action", {})
        if not isinstance(action, dict):
            raise DocumentError("action", "expected an object")
        name_to_idx = {n: i for i, n in enumerate(names)}
        elem_idx = {self.group.names[i]: i for i in range(len(self.group))}
        out = {}
        for gen_name, mapping in action.items():
            if gen_name not in elem_idx:
                raise DocumentError(f"action.{gen_name}", "not a group element")
            if not isinstance(mapping, dict):
                raise DocumentError(f"action.{gen_name}", "expected an object")
            m = [None] * len(names)
            for src, dst in mapping.items():
                if src not in name_to_idx:
                    raise DocumentError(f"action.{gen_name}.{src}", f"unknown {path}")
                if dst not in name_to_idx:
                    raise DocumentError(
                        f"action.{gen_name}.{src}", f"image {dst!r} is not a known {path}"
                    )
                m[name_to_idx[src]] = name_to_idx[dst]
            if any(v is None for v in m):
                missing = names[m.index(None)]
                raise DocumentError(f"action.{gen_name}", f"no image for {path} {missing!r}")
            out[elem_idx[gen_name]] = m
        return out

    def _build_space(self):
        doc = self.doc
        space = _need(doc, "space", "$", dict)
        kind = _need(space, "kind", "space", str)
        self.space_kind = kind
        if kind == "finite-set":
            self.points = [str(p) for p in _need(space, "points", "space", list)]
            if not self.group.is_finite:
                raise DocumentError("space", "finite-set spaces need a finite group")
            gen_maps = self._generator_maps(self.points, "point")
            if not gen_maps and len(self.group) > 1:
                raise DocumentError("action", "missing for a nontrivial group")
            try:
                full = vertex_maps_from_generators(self.group, gen_maps, len(self.points))
            except ValueError as e:
                raise DocumentError("action", str(e)) from None
            self.point_maps = {g: full[g] for g in self.group.elements()}
            return
        if kind == "simplicial":
            if not self.group.is_finite:
                raise DocumentError("space", "simplicial spaces need a finite group here")
            vertices = [str(v) for v in _need(space, "vertices", "space", list)]
            v_idx = {v: i for i, v in enumerate(vertices)}
            simplices = []
            for k, s in enumerate(_need(space, "simplices", "space", list)):
                if not isinstance(s, list) or len(s) < 2:
                    raise DocumentError(f"space.simplices[{k}]", "expected >= 2 vertices")
                try:
                    simplices.append(tuple(v_idx[str(v)] for v in s))
                except KeyError as e:
                    raise DocumentError(
                        f"space.simplices[{k}]", f"unknown vertex {e.args[0]!r}"
                    ) from None
            gen_maps = self._generator_maps(vertices, "vertex")
            if not gen_maps and len(self.group) > 1:
                raise DocumentError("action", "missing for a nontrivial group")
            try:
                full = vertex_maps_from_generators(self.group, gen_maps, len(vertices))
                self.complex = FiniteEquivariantComplex(
                    len(vertices), simplices, self.group, full, vertex_names=vertices
                )
            except ValueError as e:
                raise DocumentError("space", str(e)) from None
            return
        if kind == "periodic-simplicial":
            if self.group.is_finite:
                raise DocumentError("space", "periodic spaces need a free abelian group")
            rank = _need(space, "rank", "space", int)
            if rank != self.group.rank:
                raise DocumentError("space.rank", "does not match the group rank")
            orbits = [str(v) for v in _need(space, "vertex_orbits", "space", list)]
            o_idx = {v: i for i, v in enumerate(orbits)}
            cells = {}
            for k, cell in enumerate(_need(space, "cells", "space", list)):
                nm = _need(cell, "name", f"space.cells[{k}]", str)
                slots_raw = _need(cell, "slots", f"space.cells[{k}]", list)
                slots = []
                for s_i, slot in enumerate(slots_raw):
                    spath = f"space.cells[{k}].slots[{s_i}]"
                    if (not isinstance(slot, list) or len(slot) != 2
                            or not isinstance(slot[1], list)):
                        raise DocumentError(spath, "expected [orbit, [offsets]]")
                    if str(slot[0]) not in o_idx:
                        raise DocumentError(spath, f"unknown vertex orbit {slot[0]!r}")
                    if len(slot[1]) != rank or not all(isinstance(x, int) for x in slot[1]):
                        raise DocumentError(spath, f"offset must be {rank} integers")
                    slots.append((o_idx[str(slot[0])], tuple(slot[1])))
                cells.setdefault(len(slots) - 1, []).append((nm, tuple(slots)))
            if "action" in doc:
                raise DocumentError("action", "periodic spaces act by translation; drop this block")
            try:
                self.complex = PeriodicEquivariantComplex(self.group, orbits, cells)
            except ValueError as e:
                raise DocumentError("space", str(e)) from None
            return
        raise DocumentError("space.kind", f"unknown space kind {kind!r}")

    # -- derived objects ---------------------------------------------------------

    def build_algebra(self):
        """The coefficient algebra named by the algebra block."""
        if self.algebra_kind == "functions":
            if self.points is None:
                raise DocumentError("algebra", "functions algebra needs a finite-set space")
            table = {g: self.point_maps[g] for g in self.group.elements()}
            return build_function_algebra(self.group, table, point_names=self.points)
        if self.algebra_kind == "exterior":
            if self.points is None:
                raise DocumentError("algebra", "exterior algebra needs a finite-set space")
            perms = {g: self.point_maps[g] for g in self.group.elements()}
            return build_exterior_algebra(self.group, perms)
        if self.algebra_kind == "cochain":
            if self.complex is None or self.complex.is_periodic:
                raise DocumentError("algebra", "cochain algebra needs a finite simplicial space")
            return self.complex.cochain_algebra()
        raise DocumentError("algebra", "no algebra block and no simplicial space")

    def _simplex_id_to_amb(self, sid, path):
        K = self.complex
        if K is None:
            raise DocumentError(path, "no simplicial space in this document")
        if K.is_periodic:
            if "@" not in sid:
                raise DocumentError(path, f"periodic ids look like cell@(k); got {sid!r}")
            cell_name, off_str = sid.split("@", 1)
            if not (off_str.startswith("(") and off_str.endswith(")")):
                raise DocumentError(path, f"bad offset in {sid!r}")
            try:
                off = tuple(int(x) for x in off_str[1:-1].split(","))
            except ValueError:
                raise DocumentError(path, f"bad offset in {sid!r}") from None
            if len(off) != K.rank:
                raise DocumentError(path, f"offset rank mismatch in {sid!r}")
            for p, items in K.cells.items():
                for i, (nm, _slots) in enumerate(items):
                    if nm == cell_name:
                        return (p, i, off)
            raise DocumentError(path, f"unknown cell {cell_name!r}")
        parts = sid.split("|")
        try:
            verts = tuple(sorted(K.vertex_names.index(v) for v in parts))
        except ValueError:
            raise DocumentError(path, f"unknown vertex in {sid!r}") from None
        p = len(verts) - 1
        if verts not in K.index.get(p, {}):
            raise DocumentError(path, f"unknown simplex {sid!r}")
        return (p, K.index[p][verts])

    def build_cutoff(self):
        """Cutoff from the document, or None when absent."""
        block = self.doc.get("cutoff")
        if block is None:
            return None
        vals = {}
        for sid, raw in block.items():
            amb = self._simplex_id_to_amb(str(sid), f"cutoff.{sid}")
            v = parse_rational(raw, f"cutoff.{sid}")
            if v < 0:
                raise DocumentError(f"cutoff.{sid}", "cutoff values must be nonnegative")
            vals[amb] = v
        return Cutoff(vals)

    def build_twist(self):
        """Twist weight from the document, uniform when absent."""
        K = self.complex
        if K is None:
            raise DocumentError("weight", "no simplicial space in this document")
        block = self.doc.get("weight")
        if block is None:
            return uniform_twist(K)
        vals = {}
        if K.is_periodic:
            names = {nm: (p, i) for p, items in K.cells.items()
                     for i, (nm, _s) in enumerate(items)}
            for sid, raw in block.items():
                if str(sid) not in names:
                    raise DocumentError(f"weight.{sid}", f"unknown cell {sid!r}")
                v = parse_rational(raw, f"weight.{sid}")
                vals[names[str(sid)]] = v
            missing = set(names.values()) - set(vals)
            if missing:
                p, i = sorted(missing)[0]
                raise DocumentError("weight", f"missing value for cell {K.cells[p][i][0]!r}")
        else:
            for sid, raw in block.items():
                amb = self._simplex_id_to_amb(str(sid), f"weight.{sid}")
                vals[amb] = parse_rational(raw, f"weight.{sid}")
            for p in K.degrees():
                for i in range(K.dim_cochains(p)):
                    if (p, i) not in vals:
                        nm = "|".join(K.vertex_names[v] for v in K.simplices[p][i])
                        raise DocumentError("weight", f"missing value for simplex {nm!r}")
        try:
            return TwistFamily(K, vals)
        except ValueError as e:
            raise DocumentError("weight", str(e)) from None


def parse_document(text_or_dict):
    if isinstance(text_or_dict, (str, bytes)):
        try:
            doc = json.loads(text_or_dict)
        except json.JSONDecodeError as e:
            raise DocumentError("$", f"not valid JSON: {e}") from None
    else:
        doc = text_or_dict
    return ProblemDescription(doc)


def document_hash(doc):
    canon = json.dumps(doc, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()


def load_fixture(name):
    """Load a shipped fixture document by name ('fix1' ... 'fix6', 'fix4p', 'ext3')."""
    from importlib import resources

    ref = resources.files("equihodge.fixtures") / f"{name}.json"
    return json.loads(ref.read_text())

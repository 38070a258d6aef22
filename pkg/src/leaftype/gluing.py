"""Combinatorial covering surfaces glued from fundamental-domain copies.

One copy of the cut fundamental domain per Cayley-ball vertex. The cut
domain of the (g, n) surface with delta-disks removed is a disk with
boundary word

    a_1 b_1 a_1^-1 b_1^-1 ... a_g b_g a_g^-1 b_g^-1  s_1 beta_1 s_1^-1 ...

where the a, b edges and the slit edges s_j are glued and the beta_j arcs
(the delta-circle pieces) stay free. Crossing a glued edge moves between
deck elements by the image of a fixed shift word: the relator prefix before
one occurrence, the letter, and the inverse prefix of the other occurrence.
These conjugated shifts, not the bare generator images, are what make the
complex the actual covering surface when the deck group is nonabelian; for
abelian deck groups they reduce to generator images up to inversion.

Lifted cycles are realized as crossing sequences through face interiors
(the generic pushoff of the based loop), so mod-2 intersection numbers
reduce to exact chord-interleaving counts inside disk faces, with rational
offsets along shared edges standing in for a geometric perturbation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .cayley import CayleyBall, DEFAULT_VERTEX_BUDGET, build_ball
from .targets import Element, Representation
from .words import SurfacePresentation, Word

Crossing = Tuple[str, int]  # (pair name, +1 = cross from the pos slot side)


class InternalConsistencyError(RuntimeError):
    """A structural invariant of a glued complex failed; indicates a bug."""


def _inv(seq: Sequence[Crossing]) -> Tuple[Crossing, ...]:
    return tuple((p, -d) for p, d in reversed(seq))


@dataclass(frozen=True)
class TemplatePair:
    name: str
    pos_slot: int
    neg_slot: int
    shift: Word


class DomainTemplate:
    """The cut fundamental domain of a punctured surface, as a slot list."""

    def __init__(self, presentation: SurfacePresentation):
        self.presentation = presentation
        g, n = presentation.genus, presentation.punctures
        slots: List[Tuple[str, str]] = []  # (label, role) role in {pair_pos, pair_neg, free}
        pair_pos: Dict[str, int] = {}
        pair_neg: Dict[str, int] = {}
        for i in range(1, g + 1):
            for label, role in (
                ("a%d" % i, "pos"),
                ("b%d" % i, "pos"),
                ("a%d" % i, "neg"),
                ("b%d" % i, "neg"),
            ):
                (pair_pos if role == "pos" else pair_neg)[label] = len(slots)
                slots.append((label, role))
        for j in range(1, n + 1):
            pair_pos["s%d" % j] = len(slots)
            slots.append(("s%d" % j, "pos"))
            slots.append(("beta%d" % j, "free"))
            pair_neg["s%d" % j] = len(slots)
            slots.append(("s%d" % j, "neg"))
        self.slots = tuple(slots)
        self.size = len(slots)
        self.pairs: Dict[str, TemplatePair] = {}
        for i in range(1, g + 1):
            kappa = presentation.handle_product_word(i - 1)
            wa = Word.generator("a%d" % i)
            wb = Word.generator("b%d" % i)
            self.pairs["a%d" % i] = TemplatePair(
                "a%d" % i,
                pair_pos["a%d" % i],
                pair_neg["a%d" % i],
                kappa * wa * wb.inverse() * wa.inverse() * kappa.inverse(),
            )
            self.pairs["b%d" % i] = TemplatePair(
                "b%d" % i,
                pair_pos["b%d" % i],
                pair_neg["b%d" % i],
                kappa * wa * wb * wa * wb.inverse() * wa.inverse() * kappa.inverse(),
            )
        for j in range(1, n + 1):
            prefix = presentation.boundary_prefix_word(j)
            if j < n:
                shift = prefix * Word.generator("c%d" % j).inverse() * prefix.inverse()
            else:
                # c_n is the inverse of its own prefix, so the conjugation collapses
                shift = prefix
            self.pairs["s%d" % j] = TemplatePair(
                "s%d" % j, pair_pos["s%d" % j], pair_neg["s%d" % j], shift
            )
        self._letter_paths: Dict[str, Tuple[Crossing, ...]] = {}
        self._build_letter_paths()

    # -- generic-position loop representatives ----------------------------

    def _build_letter_paths(self) -> None:
        g, n = self.presentation.genus, self.presentation.punctures
        kappa_cache: Dict[int, Tuple[Crossing, ...]] = {0: ()}

        def kappa_seq(m: int) -> Tuple[Crossing, ...]:
            if m not in kappa_cache:
                prev = kappa_seq(m - 1)
                a = self._letter_paths["a%d" % m]
                b = self._letter_paths["b%d" % m]
                kappa_cache[m] = prev + a + b + _inv(a) + _inv(b)
            return kappa_cache[m]

        for i in range(1, g + 1):
            conj = kappa_seq(i - 1)
            pa, pb = "a%d" % i, "b%d" % i
            core_a: Tuple[Crossing, ...] = ((pa, 1), (pb, 1), (pa, -1))
            core_b: Tuple[Crossing, ...] = ((pa, 1), (pb, -1), (pa, -1), (pb, 1), (pa, -1))
            self._letter_paths[pa] = _inv(conj) + core_a + conj
            self._letter_paths[pb] = _inv(conj) + core_b + conj
        prefix_seq: Tuple[Crossing, ...] = kappa_seq(g)
        for j in range(1, n + 1):
            self._letter_paths["c%d" % j] = (
                _inv(prefix_seq) + (("s%d" % j, -1),) + prefix_seq
            )
            prefix_seq = prefix_seq + self._letter_paths["c%d" % j]

    def letter_path(self, gen: str) -> Tuple[Crossing, ...]:
        """Crossing sequence of a generic pushoff of the based generator loop."""
        self.presentation.check_gen(gen)
        return self._letter_paths[gen]

    def word_path(self, word: Word) -> Tuple[Crossing, ...]:
        out: List[Crossing] = []
        for gen, sign in word.letters:
            seq = self.letter_path(gen)
            out.extend(seq if sign == 1 else _inv(seq))
        return tuple(out)

    def path_shift_word(self, path: Sequence[Crossing]) -> Word:
        """The deck word a crossing sequence effects; letter paths give back the letter."""
        out = Word()
        for pair, d in path:
            w = self.pairs[pair].shift
            out = out * (w if d == 1 else w.inverse())
        return out


class _UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[ry] = rx

    def class_count(self, universe: range) -> int:
        return len({self.find(x) for x in universe})


@dataclass
class BoundaryComponent:
    sides: List[Tuple[int, int]]  # (face index, slot index)
    labels: List[str]

    def pure_beta_index(self) -> Optional[int]:
        names = set(self.labels)
        if len(names) == 1:
            name = next(iter(names))
            if name.startswith("beta"):
                return int(name[4:])
        return None


class GluedSurface:
    """A compact surface with boundary built over a Cayley ball.

    Face set equals the ball vertices; a glued slot is paired exactly when
    the shifted partner face lies in the ball, otherwise it is a free
    frontier edge. All invariants are computed on the component containing
    the root face (partial balls of nonabelian covers can disconnect; the
    connected flag records it).
    """

    def __init__(self, rep: Representation, ball: CayleyBall):
        self.representation = rep
        self.ball = ball
        self.template = DomainTemplate(rep.presentation)
        self.face_keys: List[str] = sorted(ball.distances)
        self.face_index: Dict[str, int] = {k: i for i, k in enumerate(self.face_keys)}
        self._shift_elements: Dict[str, Element] = {
            name: rep.evaluate(pair.shift) for name, pair in self.template.pairs.items()
        }
        self._glue()
        self._count()

    # -- construction ------------------------------------------------------

    def _glue(self) -> None:
        tpl = self.template
        self.pairings: Dict[Tuple[int, int], Tuple[int, int]] = {}
        elements = self.ball.elements
        for fi, key in enumerate(self.face_keys):
            v = elements[key]
            for name, pair in tpl.pairs.items():
                w = v.compose(self._shift_elements[name])
                wk = w.key()
                if wk in self.face_index:
                    fj = self.face_index[wk]
                    self.pairings[(fi, pair.pos_slot)] = (fj, pair.neg_slot)
                    self.pairings[(fj, pair.neg_slot)] = (fi, pair.pos_slot)
        self.free_sides: List[Tuple[int, int]] = []
        for fi in range(len(self.face_keys)):
            for slot in range(tpl.size):
                if (fi, slot) not in self.pairings:
                    self.free_sides.append((fi, slot))
        self.free_sides.sort()

    def _corner(self, face: int, slot: int) -> int:
        return face * self.template.size + slot

    def _count(self) -> None:
        L = self.template.size
        nfaces = len(self.face_keys)
        uf = _UnionFind(nfaces * L)
        seen = set()
        for (fi, p), (fj, q) in self.pairings.items():
            if ((fj, q), (fi, p)) in seen:
                continue
            seen.add(((fi, p), (fj, q)))
            uf.union(self._corner(fi, p), self._corner(fj, (q + 1) % L))
            uf.union(self._corner(fi, (p + 1) % L), self._corner(fj, q))
        self._corner_uf = uf
        self.F = nfaces
        self.E = len(seen) + len(self.free_sides)
        self.V = uf.class_count(range(nfaces * L))
        self.chi = self.V - self.E + self.F
        v_traced = self._trace_vertex_cycles()
        if v_traced != self.V:
            raise InternalConsistencyError(
                "vertex count mismatch: union-find %d vs rotation tracing %d"
                % (self.V, v_traced)
            )
        self.boundary_components = self._trace_boundary()
        self.r = len(self.boundary_components)
        self._component_faces()
        self._root_invariants()

    def _rotation_next(self, face: int, slot: int) -> Optional[Tuple[int, int]]:
        partner = self.pairings.get((face, slot))
        if partner is None:
            return None
        fj, q = partner
        return fj, (q + 1) % self.template.size

    def _trace_vertex_cycles(self) -> int:
        """Independent vertex count: orbits of the corner rotation map."""
        L = self.template.size
        nfaces = len(self.face_keys)
        visited = [False] * (nfaces * L)
        count = 0
        # chains start where the incoming slot is unglued
        for fi in range(nfaces):
            for k in range(L):
                if (fi, (k - 1) % L) in self.pairings:
                    continue
                if visited[self._corner(fi, k)]:
                    continue
                count += 1
                cur: Optional[Tuple[int, int]] = (fi, k)
                while cur is not None and not visited[self._corner(*cur)]:
                    visited[self._corner(*cur)] = True
                    cur = self._rotation_next(*cur)
        for fi in range(nfaces):
            for k in range(L):
                if visited[self._corner(fi, k)]:
                    continue
                count += 1
                cur = (fi, k)
                while cur is not None and not visited[self._corner(*cur)]:
                    visited[self._corner(*cur)] = True
                    cur = self._rotation_next(*cur)
        return count

    def _boundary_next(self, side: Tuple[int, int]) -> Tuple[int, int]:
        L = self.template.size
        face, slot = side
        cur = (face, (slot + 1) % L)
        for _ in range(2 * self.F * L + 2):
            if cur not in self.pairings:
                return cur
            fj, q = self.pairings[cur]
            cur = (fj, (q + 1) % L)
        raise InternalConsistencyError("boundary tracing did not terminate")

    def _trace_boundary(self) -> List[BoundaryComponent]:
        out: List[BoundaryComponent] = []
        remaining = set(self.free_sides)
        for start in self.free_sides:
            if start not in remaining:
                continue
            sides = []
            cur = start
            while cur in remaining:
                remaining.discard(cur)
                sides.append(cur)
                cur = self._boundary_next(cur)
            if cur != start:
                raise InternalConsistencyError("boundary cycle did not close up")
            out.append(
                BoundaryComponent(
                    sides, [self.template.slots[s][0] for _, s in sides]
                )
            )
        return out

    def _component_faces(self) -> None:
        uf = _UnionFind(len(self.face_keys))
        for (fi, _), (fj, _) in self.pairings.items():
            uf.union(fi, fj)
        roots = {uf.find(i) for i in range(len(self.face_keys))}
        self.n_components = len(roots)
        self.connected = self.n_components == 1
        root_face = self.face_index[self.ball.root]
        self.root_faces = {
            i for i in range(len(self.face_keys)) if uf.find(i) == uf.find(root_face)
        }

    def _root_invariants(self) -> None:
        if self.connected:
            self.root_chi, self.root_r, self.root_F = self.chi, self.r, self.F
        else:
            L = self.template.size
            faces = self.root_faces
            F = len(faces)
            pair_count = sum(
                1
                for (fi, p), (fj, q) in self.pairings.items()
                if fi in faces and (fi, p) <= (fj, q)
            )
            free_count = sum(1 for fi, _ in self.free_sides if fi in faces)
            E = pair_count + free_count
            classes = {
                self._corner_uf.find(self._corner(fi, k))
                for fi in faces
                for k in range(L)
            }
            self.root_chi = len(classes) - E + F
            self.root_r = sum(
                1 for b in self.boundary_components if b.sides[0][0] in faces
            )
            self.root_F = F
        genus2 = 2 - self.root_chi - self.root_r
        if genus2 < 0 or genus2 % 2 != 0:
            raise InternalConsistencyError(
                "invalid genus from chi=%d r=%d" % (self.root_chi, self.root_r)
            )
        self.genus = genus2 // 2

    # -- queries -----------------------------------------------------------

    def closed_beta_indices(self) -> set:
        """Puncture indices whose delta-circle closes up inside this ball."""
        out = set()
        for comp in self.boundary_components:
            j = comp.pure_beta_index()
            if j is not None:
                out.add(j)
        return out

    def orientation_consistent(self) -> bool:
        """Every pairing joins a pos-side slot to a neg-side slot, so giving
        all faces the same orientation reverses glued edges as required."""
        for (fi, p), (fj, q) in self.pairings.items():
            roles = {self.template.slots[p][1], self.template.slots[q][1]}
            if roles != {"pos", "neg"}:
                return False
        return True

    def to_json_dict(self) -> dict:
        return {
            "N": self.ball.radius,
            "F": self.root_F,
            "E": self.E,
            "V": self.V,
            "chi": self.root_chi,
            "boundary_components": self.root_r,
            "genus": self.genus,
            "connected": self.connected,
        }


def glue_ball(rep: Representation, ball: CayleyBall) -> GluedSurface:
    return GluedSurface(rep, ball)


# -- lifted cycles ----------------------------------------------------------


class AbstractCover:
    """The full covering surface, used as a lift context without a ball.

    Faces are arbitrary deck elements and every glued edge exists, so the
    lift of any kernel word closes. Witness confirmation runs here; balls
    are only needed when frontier behavior matters.
    """

    def __init__(self, rep: Representation):
        self.representation = rep
        self.template = DomainTemplate(rep.presentation)
        self._shift_elements: Dict[str, Element] = {
            name: rep.evaluate(pair.shift) for name, pair in self.template.pairs.items()
        }

    def lift(self, word: Word, base: Optional[Element] = None) -> "LiftedPath":
        rep = self.representation
        cur = base if base is not None else rep.identity()
        base_key = cur.key()
        path = self.template.word_path(word)
        records: List[CrossingRecord] = []
        for pair, d in path:
            shift = self._shift_elements[pair]
            nxt = cur.compose(shift if d == 1 else shift.inverse())
            pos_face = cur.key() if d == 1 else nxt.key()
            records.append(
                CrossingRecord(pair, d, cur.key(), nxt.key(), (pos_face, pair))
            )
            cur = nxt
        return LiftedPath(base_key, self, records, True, cur.key())


@dataclass
class CrossingRecord:
    pair: str
    direction: int
    from_face: str
    to_face: str
    edge_key: Tuple[str, str]  # (pos-side face key, pair name)


@dataclass
class LiftedPath:
    base: str
    surface: object  # GluedSurface or AbstractCover
    crossings: List[CrossingRecord]
    complete: bool
    end_face: Optional[str]
    exit_step: Optional[int] = None
    exit_pair: Optional[str] = None

    @property
    def exits_ball(self) -> bool:
        return not self.complete

    @property
    def closed(self) -> bool:
        return self.complete and self.end_face == self.base

    def __len__(self) -> int:
        return len(self.crossings)


def lift_cycle(
    rep: Representation,
    ball_or_surface,
    word: Word,
    base: Optional[str] = None,
) -> LiftedPath:
    """Lift the pushed-off loop of a word to the glued surface at a base face.

    The path crosses one glued edge per crossing of the generic-position
    representative; it is closed exactly when the word evaluates to the
    identity. Leaving the ball is reported with a marker, not an error.
    """
    surface = (
        ball_or_surface
        if isinstance(ball_or_surface, GluedSurface)
        else GluedSurface(rep, ball_or_surface)
    )
    ball = surface.ball
    base = base if base is not None else ball.root
    if base not in ball.distances:
        raise ValueError("base face %r is not in the ball" % (base,))
    path = surface.template.word_path(word)
    cur = ball.elements[base]
    records: List[CrossingRecord] = []
    for step, (pair, d) in enumerate(path):
        shift = surface._shift_elements[pair]
        nxt = cur.compose(shift if d == 1 else shift.inverse())
        nk = nxt.key()
        if nk not in ball.distances:
            return LiftedPath(base, surface, records, False, None, step, pair)
        pos_face = cur.key() if d == 1 else nk
        records.append(CrossingRecord(pair, d, cur.key(), nk, (pos_face, pair)))
        cur = nxt
    return LiftedPath(base, surface, records, True, cur.key())


def intersection_number_mod2(p1: LiftedPath, p2: LiftedPath) -> int:
    """Z/2 homological intersection number of two closed lifted cycles.

    Each visit of a path to a face is a chord between boundary positions of
    that disk face; two chords cross mod 2 iff their endpoints interleave.
    Crossing points along a shared edge get distinct rational offsets,
    consistent on both sides of the gluing, which realizes the canonical
    perturbation. Total parity is a homotopy invariant, so the particular
    offset order does not matter.
    """
    if p1.surface is not p2.surface:
        raise ValueError("paths live on different glued surfaces")
    for p in (p1, p2):
        if not p.closed:
            raise ValueError("intersection numbers require closed paths")
    # per-edge offsets, path 1 first, then path 2
    tags: Dict[Tuple[str, str], List[Tuple[int, int]]] = {}
    for which, p in ((1, p1), (2, p2)):
        for rec in p.crossings:
            tags.setdefault(rec.edge_key, []).append((which, id(rec)))
    offsets: Dict[Tuple[str, str], Dict[int, Fraction]] = {}
    for edge, lst in tags.items():
        total = len(lst)
        offsets[edge] = {
            idx: Fraction(idx + 1, total + 1) for idx in range(total)
        }

    def chords_for(p: LiftedPath, which: int) -> Dict[str, List[Tuple[Fraction, Fraction]]]:
        tpl = p.surface.template
        out: Dict[str, List[Tuple[Fraction, Fraction]]] = {}
        n = len(p.crossings)
        for i in range(n):
            entry = p.crossings[i]
            exit_ = p.crossings[(i + 1) % n]
            face = entry.to_face
            if exit_.from_face != face:
                raise InternalConsistencyError("crossing records are not contiguous")
            e_pos = _endpoint_position(tpl, entry, face, True, offsets, tags, which)
            x_pos = _endpoint_position(tpl, exit_, face, False, offsets, tags, which)
            out.setdefault(face, []).append((e_pos, x_pos))
        return out

    chords1 = chords_for(p1, 1)
    chords2 = chords_for(p2, 2)
    L = p1.surface.template.size
    total = 0
    for face, lst1 in chords1.items():
        for x1, y1 in lst1:
            for x2, y2 in chords2.get(face, []):
                if _interleaves(x1, y1, x2, y2, L):
                    total += 1
    return total % 2


def _endpoint_position(tpl, rec: CrossingRecord, face: str, entering: bool, offsets, tags, which: int) -> Fraction:
    pair = tpl.pairs[rec.pair]
    if rec.direction == 1:
        slot = pair.neg_slot if entering else pair.pos_slot
    else:
        slot = pair.pos_slot if entering else pair.neg_slot
    idx = tags[rec.edge_key].index((which, id(rec)))
    t = offsets[rec.edge_key][idx]
    on_pos_side = face == rec.edge_key[0]
    return Fraction(slot) + (t if on_pos_side else 1 - t)


def _interleaves(x1, y1, x2, y2, circumference) -> bool:
    def inside(a, b, p):
        da = (p - a) % circumference
        db = (b - a) % circumference
        return 0 < da < db

    return inside(x1, y1, x2) != inside(x1, y1, y2)


# -- growth tables -----------------------------------------------------------


def genus_growth(
    rep: Representation,
    radii: Sequence[int],
    vertex_budget: int = DEFAULT_VERTEX_BUDGET,
) -> List[dict]:
    """Per-radius surface invariants (N, chi, boundary count, genus)."""
    rows: List[dict] = []
    last = None
    for N in radii:
        if last is not None and N <= last:
            raise ValueError("radius schedule must be strictly increasing")
        last = N
        surface = GluedSurface(rep, build_ball(rep, N, vertex_budget))
        row = surface.to_json_dict()
        rows.append(row)
    return rows

"""Symbolic bookkeeping for abstract open books.

Pages are descriptors (a base Liouville-domain tag plus an ordered handle
list), monodromies are words in signed twists about registered Lagrangian
spheres, and stabilization attaches one critical handle along a disk
boundary while composing one positive twist on the right. Descriptors are
immutable; operations return new values. The only analytic content is the
local model of the twist about the zero section of the sphere cotangent
bundle, driven by a monotone angle profile that is pi near the zero section
and 0 outside a compact radius.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
import numpy as np

from ._smooth import smoothstep5
from .errors import ArgumentError


@dataclass(frozen=True)
class Handle:
    index: int
    attaching: str


@dataclass(frozen=True)
class PageDesc:
    """A page: base domain tag plus ordered handles; indices at most n."""

    base: str
    n: int
    handles: tuple[Handle, ...] = ()

    def __post_init__(self):
        labels = [h.attaching for h in self.handles]
        if len(set(labels)) != len(labels):
            raise ArgumentError("handle attaching labels must be unique")
        for h in self.handles:
            if not 0 <= h.index <= self.n:
                raise ArgumentError(f"handle index {h.index} outside [0, {self.n}]")

    @property
    def recognized_model(self) -> str | None:
        """The standard-domain tag this descriptor is a known presentation of."""
        if self.base == "D^{2n}" and len(self.handles) == 1 \
                and self.handles[0].index == self.n:
            return "D(T*S^n)"
        if not self.handles:
            return self.base
        return None

    def canonical(self) -> str:
        hs = "".join(f"+h{h.index}[{h.attaching}]" for h in self.handles)
        return f"{self.base}{hs}"

    def sorted_handles(self) -> "PageDesc":
        return replace(self, handles=tuple(sorted(
            self.handles, key=lambda h: (h.index, h.attaching))))


@dataclass(frozen=True)
class Twist:
    sphere: str
    sign: int

    def __post_init__(self):
        if self.sign not in (-1, 1):
            raise ArgumentError("twist sign must be +1 or -1")

    def canonical(self) -> str:
        return ("+" if self.sign > 0 else "-") + f"tw({self.sphere})"


@dataclass(frozen=True)
class MonodromyWord:
    """Composition word, leftmost factor applied last (function order)."""

    word: tuple[Twist, ...] = ()

    def compose_right(self, twist: Twist) -> "MonodromyWord":
        return MonodromyWord(self.word + (twist,))

    def free_reduce(self) -> "MonodromyWord":
        out: list[Twist] = []
        for tw in self.word:
            if out and out[-1].sphere == tw.sphere and out[-1].sign == -tw.sign:
                out.pop()
            else:
                out.append(tw)
        return MonodromyWord(tuple(out))

    def canonical(self) -> str:
        return "*".join(t.canonical() for t in self.word) if self.word else "id"


@dataclass(frozen=True)
class OpenBookDesc:
    """Page + monodromy + declared disks (label, boundary-in-binding flag)
    + the registry of Lagrangian spheres twists may reference."""

    page: PageDesc
    monodromy: MonodromyWord = field(default_factory=MonodromyWord)
    spheres: tuple[str, ...] = ()
    disks: tuple[tuple[str, bool], ...] = ()

    def __post_init__(self):
        registry = set(self.spheres)
        for tw in self.monodromy.word:
            if tw.sphere not in registry:
                raise ArgumentError(f"twist about unregistered sphere {tw.sphere!r}")
        labels = [d for d, _ in self.disks]
        if len(set(labels)) != len(labels):
            raise ArgumentError("disk labels must be unique")

    def canonical(self) -> str:
        sph = ",".join(sorted(self.spheres))
        dks = ",".join(f"{d}{'!' if bib else ''}" for d, bib in sorted(self.disks))
        return (f"Open({self.page.canonical()}; {self.monodromy.canonical()}; "
                f"spheres=[{sph}]; disks=[{dks}])")

    def canonical_sorted(self) -> str:
        return replace(self, page=self.page.sorted_handles()).canonical()


def stabilize(ob: OpenBookDesc, disk: str) -> OpenBookDesc:
    """Attach one critical handle along the boundary of a declared disk whose
    boundary lies in the binding; register the sphere disk+core and compose
    one positive twist about it on the right."""
    flags = dict(ob.disks)
    if disk not in flags:
        raise ArgumentError(f"unknown disk {disk!r}")
    if not flags[disk]:
        raise ArgumentError(f"disk {disk!r} does not end in the binding")
    handle = Handle(index=ob.page.n, attaching=f"bd {disk}")
    new_sphere = f"{disk}+core"
    if new_sphere in ob.spheres:
        raise ArgumentError(f"sphere label {new_sphere!r} already registered")
    return OpenBookDesc(
        page=replace(ob.page, handles=ob.page.handles + (handle,)),
        monodromy=ob.monodromy.compose_right(Twist(new_sphere, +1)),
        spheres=ob.spheres + (new_sphere,),
        disks=ob.disks,
    )


def surgery_rewrite(ob: OpenBookDesc, sphere: str, sign: int = +1) -> OpenBookDesc:
    """Surgery along a page sphere appends one twist about it to the word."""
    if sphere not in ob.spheres:
        raise ArgumentError(f"unknown sphere {sphere!r}")
    return replace(ob, monodromy=ob.monodromy.compose_right(Twist(sphere, sign)))


# --- the local twist model --------------------------------------------------


@dataclass(frozen=True)
class TwistProfile:
    """Rotation-angle profile: pi on [0, plateau], monotone down to 0 at
    support_end, 0 beyond; drives the normalized geodesic rotation."""

    plateau: float = 0.1
    support_end: float = 0.9

    def g1(self, r):
        r = np.asarray(r, dtype=float)
        return np.pi * (1.0 - smoothstep5(
            (r - self.plateau) / (self.support_end - self.plateau)))

    def rotation(self, q: np.ndarray, p: np.ndarray, angle: np.ndarray):
        """Apply the normalized geodesic rotation by the given angles."""
        r = np.linalg.norm(p, axis=-1, keepdims=True)
        c = np.cos(angle)[:, None]
        s = np.sin(angle)[:, None]
        safe = np.maximum(r, 1e-300)
        q_new = c * q + s * p / safe
        p_new = -s * r * q + c * p
        return q_new, p_new


def dehn_twist_rows(rows: np.ndarray, profile: TwistProfile) -> np.ndarray:
    """The twist on cotangent rows [q, p] (|q| = 1, p.q = 0): the normalized
    geodesic rotation by g1(|p|) off the zero section, the antipode on it;
    output renormalized and re-projected."""
    rows = np.atleast_2d(np.asarray(rows, dtype=float))
    d = rows.shape[1] // 2
    q, p = rows[:, :d], rows[:, d:]
    r = np.linalg.norm(p, axis=1)
    on_core = r < 1e-300
    angle = profile.g1(r)
    q_new, p_new = profile.rotation(q, p, angle)
    q_new = np.where(on_core[:, None], -q, q_new)
    p_new = np.where(on_core[:, None], np.zeros_like(p), p_new)
    q_new /= np.linalg.norm(q_new, axis=1, keepdims=True)
    p_new -= np.sum(p_new * q_new, axis=1, keepdims=True) * q_new
    return np.concatenate([q_new, p_new], axis=1)


def dehn_twist_map(q: np.ndarray, p: np.ndarray,
                   profile: TwistProfile | None = None):
    profile = profile or TwistProfile()
    q = np.asarray(q, dtype=float)
    p = np.asarray(p, dtype=float)
    if abs(q @ q - 1.0) > 1e-10 or abs(p @ q) > 1e-10:
        raise ArgumentError("twist input must satisfy |q| = 1, p.q = 0")
    row = dehn_twist_rows(np.concatenate([q, p])[None, :], profile)[0]
    d = q.shape[0]
    return row[:d], row[d:]


# --- relative open books ----------------------------------------------------

ADD_BALL = "add_ball"
REMOVE_BALL = "remove_ball"
CONVEX = "convex"
CONCAVE = "concave"


@dataclass(frozen=True)
class RelPage:
    index: int
    domain: str
    alpha: str  # convex or concave boundary region
    move_from_prev: str | None  # add_ball / remove_ball / None at index 0

    def __post_init__(self):
        if self.alpha not in (CONVEX, CONCAVE):
            raise ArgumentError(f"alpha flag must be convex/concave, got {self.alpha}")
        if self.move_from_prev not in (None, ADD_BALL, REMOVE_BALL):
            raise ArgumentError(f"unknown page move {self.move_from_prev!r}")


@dataclass(frozen=True)
class RelativeOpenBook:
    """Alternating sequence of pages related by ball moves, closed by a
    return identification."""

    pages: tuple[RelPage, ...]
    monodromy: str
    name: str = "relative"

    def __post_init__(self):
        if len(self.pages) % 2 == 0:
            raise ArgumentError("page sequence must have odd length 2k+1")
        moves = [p.move_from_prev for p in self.pages]
        if moves[0] is not None:
            raise ArgumentError("first page carries no move")
        for a, b in zip(moves[1:], moves[2:]):
            if a == b:
                raise ArgumentError("ball moves must alternate")

    def canonical(self) -> str:
        body = " | ".join(
            f"S{p.index}:{p.domain}({p.alpha[:4]}"
            + (f",{p.move_from_prev}" if p.move_from_prev else "") + ")"
            for p in self.pages
        )
        return f"Rel[{self.name}]({body}; h={self.monodromy})"


# unions of page pieces arising in the shipped fixtures: two half-disks close
# to the sphere bundle; an annulus collar absorbs into the sphere bundle
_RECOGNIZED_UNIONS = {
    ("D(T*D^n)", "D(T*D^n)"): "D(T*S^n)",
    ("D(T*(S^{n-1}xI))", "D(T*S^n)"): "D(T*S^n)",
    ("D(T*S^n)", "D(T*(S^{n-1}xI))"): "D(T*S^n)",
}


def glue_relative(a: RelativeOpenBook, b: RelativeOpenBook) -> RelativeOpenBook:
    """Glue two relative open books page by page. At every index the concave
    boundary region of one must meet the convex region of the other, and the
    ball moves must be complementary (a ball added on one side is removed
    from the other, so the glued page topology is constant). The remaining
    glued boundary is binding, tagged convex."""
    if len(a.pages) != len(b.pages):
        raise ArgumentError("page sequences must have equal length")
    glued = []
    for pa, pb in zip(a.pages, b.pages):
        if {pa.alpha, pb.alpha} != {CONVEX, CONCAVE}:
            raise ArgumentError(
                f"boundary regions at index {pa.index} are not complementary")
        if (pa.move_from_prev is None) != (pb.move_from_prev is None):
            raise ArgumentError(f"page moves at index {pa.index} are misaligned")
        if pa.move_from_prev is not None and pa.move_from_prev == pb.move_from_prev:
            raise ArgumentError(
                f"ball moves at index {pa.index} are both {pa.move_from_prev}")
        domain = _RECOGNIZED_UNIONS.get(
            (pa.domain, pb.domain), f"{pa.domain}+{pb.domain}")
        glued.append(RelPage(pa.index, domain, CONVEX, pa.move_from_prev))
    monos = {a.monodromy, b.monodromy} - {"id"}
    mono = monos.pop() if len(monos) == 1 else (
        "id" if not monos else f"{a.monodromy}+{b.monodromy}")
    return RelativeOpenBook(tuple(glued), mono, name=f"{a.name}&{b.name}")


def ball_neighborhood_fixture() -> RelativeOpenBook:
    """Relative decomposition of the ball neighbourhood of a page disk:
    disk cotangent bundles of the disk alternating with those of the annulus,
    identity return map."""
    disk = "D(T*D^n)"
    ann = "D(T*(S^{n-1}xI))"
    pages = (
        RelPage(0, disk, CONVEX, None),
        RelPage(1, ann, CONCAVE, REMOVE_BALL),
        RelPage(2, disk, CONVEX, ADD_BALL),
        RelPage(3, ann, CONCAVE, REMOVE_BALL),
        RelPage(4, disk, CONVEX, ADD_BALL),
    )
    return RelativeOpenBook(pages, "id", name="ball_nbhd")


def shifted_ball_fixture() -> RelativeOpenBook:
    """The ball fixture with page indices shifted by one (legal because its
    return map is identity): annulus pages land on even indices."""
    disk = "D(T*D^n)"
    ann = "D(T*(S^{n-1}xI))"
    pages = (
        RelPage(0, ann, CONCAVE, None),
        RelPage(1, disk, CONVEX, ADD_BALL),
        RelPage(2, ann, CONCAVE, REMOVE_BALL),
        RelPage(3, disk, CONVEX, ADD_BALL),
        RelPage(4, ann, CONCAVE, REMOVE_BALL),
    )
    return RelativeOpenBook(pages, "id", name="ball_nbhd_shifted")


def sphere_complement_fixture() -> RelativeOpenBook:
    """Relative decomposition of the complement of the disk neighbourhood in
    the standard contact sphere: core-sphere cotangent pages alternating with
    disk cotangent pages, one positive twist as the return map."""
    disk = "D(T*D^n)"
    sphere = "D(T*S^n)"
    pages = (
        RelPage(0, sphere, CONVEX, None),
        RelPage(1, disk, CONCAVE, REMOVE_BALL),
        RelPage(2, sphere, CONVEX, ADD_BALL),
        RelPage(3, disk, CONCAVE, REMOVE_BALL),
        RelPage(4, sphere, CONVEX, ADD_BALL),
    )
    return RelativeOpenBook(pages, "tau(S0)", name="sphere_complement")

"""Frames of discernment, subsets as bitmasks, and refinements.

A subset of a frame is a plain ``int`` whose bit ``i`` is set when the
frame's ``i``-th element belongs to it.  Bit order is label order; product
frames number their cells row-major, so the last dimension varies fastest.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Hashable, Iterable, Iterator, Sequence

from .errors import (
    DuplicateLabel,
    EmptyDimension,
    EmptyFrame,
    FrameMismatch,
    FrameTooLarge,
    InvalidInput,
    InvalidSubset,
)

MAX_FRAME_SIZE = 24

Label = Hashable


@dataclass(frozen=True)
class Frame:
    """A finite frame of discernment.

    ``labels`` are the elements in bit order.  For product frames
    ``dimensions`` holds ``(name, labels)`` pairs and every element is the
    tuple of its per-dimension labels.
    """

    labels: tuple
    dimensions: tuple[tuple[str, tuple], ...] | None = None
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        if not labels:
            raise EmptyFrame("a frame needs at least one element")
        if len(labels) > MAX_FRAME_SIZE:
            raise FrameTooLarge(
                f"frame has {len(labels)} elements; the cap is {MAX_FRAME_SIZE}"
            )
        index = {}
        for i, label in enumerate(labels):
            if label in index:
                raise DuplicateLabel(f"label {label!r} occurs more than once")
            index[label] = i
        object.__setattr__(self, "_index", index)
        if self.dimensions is not None:
            dims = tuple((str(name), tuple(values)) for name, values in self.dimensions)
            object.__setattr__(self, "dimensions", dims)
            if len({name for name, _ in dims}) != len(dims):
                raise DuplicateLabel("dimension names must be distinct")
            cells = tuple(itertools.product(*(values for _, values in dims)))
            if cells != labels:
                raise InvalidInput("labels must be the row-major product of the dimensions")

    # -- basic geometry -------------------------------------------------

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def full(self) -> int:
        """The mask of the whole frame."""
        return (1 << len(self.labels)) - 1

    @property
    def is_product(self) -> bool:
        return self.dimensions is not None

    def complement(self, mask: int) -> int:
        return self.full & ~self.check(mask)

    def check(self, mask: int) -> int:
        """Return ``mask`` after verifying it only uses this frame's bits."""
        if not isinstance(mask, int) or isinstance(mask, bool):
            raise InvalidSubset(f"subset masks are ints, got {type(mask).__name__}")
        if mask < 0 or mask > self.full:
            raise InvalidSubset(f"mask {mask:#x} has bits outside a frame of size {self.size}")
        return mask

    # -- label <-> index ------------------------------------------------

    def index(self, label: Label) -> int:
        try:
            return self._index[label]
        except (KeyError, TypeError):
            if isinstance(label, list):
                return self.index(tuple(label))
            raise InvalidSubset(f"{label!r} is not an element of this frame") from None

    def subset(self, items: int | Iterable[Label]) -> int:
        """Build a mask from an iterable of labels (or validate an int mask)."""
        if isinstance(items, int) and not isinstance(items, bool):
            return self.check(items)
        if isinstance(items, str):
            raise InvalidSubset("pass an iterable of labels, not a bare string")
        mask = 0
        for label in items:
            mask |= 1 << self.index(label)
        return mask

    def singleton(self, label: Label) -> int:
        return 1 << self.index(label)

    def members(self, mask: int) -> list:
        """Labels in ``mask``, in frame order."""
        self.check(mask)
        return [self.labels[i] for i in iter_bits(mask)]

    def format(self, mask: int) -> str:
        names = []
        for label in self.members(mask):
            names.append("(" + ",".join(map(str, label)) + ")" if isinstance(label, tuple) else str(label))
        return "{" + ", ".join(names) + "}"

    # -- product structure ----------------------------------------------

    @property
    def shape(self) -> tuple[int, ...]:
        if self.dimensions is None:
            return (self.size,)
        return tuple(len(values) for _, values in self.dimensions)

    def dimension_index(self, name: str) -> int:
        if self.dimensions is None:
            raise InvalidInput("frame has no dimensions")
        for i, (dim_name, _) in enumerate(self.dimensions):
            if dim_name == name:
                return i
        raise InvalidInput(f"no dimension named {name!r}")

    def cell_index(self, cell: Sequence[Label]) -> int:
        """Index of a product cell given as a tuple of per-dimension labels."""
        return self.index(tuple(cell))

    def cell(self, index: int) -> tuple:
        if not 0 <= index < self.size:
            raise InvalidSubset(f"index {index} out of range")
        label = self.labels[index]
        return label if isinstance(label, tuple) else (label,)

    def cylinder(self, name: str, labels: Iterable[Label]) -> int:
        """Mask of all cells whose ``name`` coordinate lies in ``labels``."""
        d = self.dimension_index(name)
        values = self.dimensions[d][1]
        wanted = set(labels)
        unknown = wanted - set(values)
        if unknown:
            raise InvalidSubset(f"{sorted(map(str, unknown))} not in dimension {name!r}")
        mask = 0
        for i, cell in enumerate(self.labels):
            if cell[d] in wanted:
                mask |= 1 << i
        return mask

    def project_to(self, name: str, mask: int) -> set:
        """Set of ``name`` coordinates occurring among the cells of ``mask``."""
        d = self.dimension_index(name)
        return {self.labels[i][d] for i in iter_bits(self.check(mask))}


def make_frame(labels: Iterable[Label]) -> Frame:
    return Frame(tuple(labels))


def make_product_frame(dims: Iterable[tuple[str, Iterable[Label]]]) -> Frame:
    """Cartesian product frame, cells in row-major order.

    >>> f = make_product_frame([("animals", ["birds", "fish"]), ("flight", ["fly", "not fly"])])
    >>> f.labels[1]
    ('birds', 'not fly')
    """
    dims = [(name, tuple(values)) for name, values in dims]
    if not dims:
        raise EmptyFrame("a product frame needs at least one dimension")
    size = 1
    for name, values in dims:
        if not values:
            raise EmptyDimension(f"dimension {name!r} is empty")
        if len(set(values)) != len(values):
            raise DuplicateLabel(f"dimension {name!r} repeats a label")
        size *= len(values)
    if size > MAX_FRAME_SIZE:
        raise FrameTooLarge(f"product has {size} cells; the cap is {MAX_FRAME_SIZE}")
    cells = tuple(itertools.product(*(values for _, values in dims)))
    return Frame(cells, tuple(dims))


def iter_bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def submasks(mask: int) -> Iterator[int]:
    """All subsets of ``mask``, including ``mask`` and 0, in descending order."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def supermasks(mask: int, full: int) -> Iterator[int]:
    """All supersets of ``mask`` inside ``full``."""
    free = full & ~mask
    for extra in submasks(free):
        yield mask | extra


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def popcount(mask: int) -> int:
    return bin(mask).count("1")


# -- refinements ------------------------------------------------------------


@dataclass(frozen=True)
class Refinement:
    """Explicit refinement mapping from ``coarse`` to ``fine``.

    ``image[i]`` is the fine mask assigned to coarse element ``i``.  The
    constructor does not enforce validity; call :func:`validate_refinement`
    or build through :func:`make_refinement`.
    """

    coarse: Frame
    fine: Frame
    image: tuple[int, ...]

    def __post_init__(self) -> None:
        image = tuple(self.image)
        object.__setattr__(self, "image", image)
        if len(image) != self.coarse.size:
            raise InvalidInput("need exactly one image per coarse element")
        for mask in image:
            self.fine.check(mask)


@dataclass(frozen=True)
class RefinementReport:
    empty_images: tuple = ()
    overlapping: tuple = ()
    uncovered: int = 0

    @property
    def valid(self) -> bool:
        return not (self.empty_images or self.overlapping or self.uncovered)

    def __bool__(self) -> bool:
        return self.valid

    def violations(self) -> list[str]:
        out = []
        if self.empty_images:
            out.append(f"(i) empty image for coarse elements {list(self.empty_images)}")
        if self.overlapping:
            out.append(f"(ii) images overlap for pairs {list(self.overlapping)}")
        if self.uncovered:
            out.append(f"(iii) images do not cover the fine frame (missing mask {self.uncovered:#x})")
        return out


def validate_refinement(r: Refinement) -> RefinementReport:
    """Check that the images are nonempty, pairwise disjoint and cover ``fine``."""
    labels = r.coarse.labels
    empty = tuple(labels[i] for i, img in enumerate(r.image) if img == 0)
    overlapping = tuple(
        (labels[i], labels[j])
        for i, j in itertools.combinations(range(len(r.image)), 2)
        if r.image[i] & r.image[j]
    )
    covered = 0
    for img in r.image:
        covered |= img
    return RefinementReport(empty, overlapping, r.fine.full & ~covered)


def make_refinement(coarse: Frame, fine: Frame, mapping: dict) -> Refinement:
    """Build and validate a refinement from ``{coarse label: fine labels}``."""
    image = []
    for label in coarse.labels:
        if label not in mapping:
            raise InvalidInput(f"no image given for {label!r}")
        image.append(fine.subset(mapping[label]))
    r = Refinement(coarse, fine, tuple(image))
    report = validate_refinement(r)
    if not report:
        raise InvalidInput("not a refinement: " + "; ".join(report.violations()))
    return r


def product_refinement(coarse: Frame, fine: Frame, dimension: str, mapping: dict) -> Refinement:
    """Lift a refinement of one dimension to product frames.

    ``coarse`` and ``fine`` must agree on every other dimension; ``mapping``
    sends each coarse label of ``dimension`` to a list of fine labels.
    """
    if not (coarse.is_product and fine.is_product):
        raise InvalidInput("product_refinement needs two product frames")
    dc = coarse.dimension_index(dimension)
    df = fine.dimension_index(dimension)
    if dc != df or len(coarse.dimensions) != len(fine.dimensions):
        raise FrameMismatch("frames must have the same dimension layout")
    for k, ((cn, cv), (fn, fv)) in enumerate(zip(coarse.dimensions, fine.dimensions)):
        if cn != fn or (k != dc and cv != fv):
            raise FrameMismatch(f"dimension {cn!r} differs between the frames")
    image = []
    for cell in coarse.labels:
        targets = set(mapping[cell[dc]])
        mask = 0
        for i, fcell in enumerate(fine.labels):
            if fcell[dc] in targets and all(
                fcell[k] == cell[k] for k in range(len(cell)) if k != dc
            ):
                mask |= 1 << i
        image.append(mask)
    r = Refinement(coarse, fine, tuple(image))
    report = validate_refinement(r)
    if not report:
        raise InvalidInput("not a refinement: " + "; ".join(report.violations()))
    return r


def refine_set(r: Refinement, mask: int) -> int:
    """Image of a coarse subset: the union of its elements' images."""
    out = 0
    for i in iter_bits(r.coarse.check(mask)):
        out |= r.image[i]
    return out


def outer_reduction(r: Refinement, fine_mask: int) -> int:
    """Coarse elements whose image meets ``fine_mask``."""
    r.fine.check(fine_mask)
    out = 0
    for i, img in enumerate(r.image):
        if img & fine_mask:
            out |= 1 << i
    return out


def same_frame(*frames: Frame) -> Frame:
    first = frames[0]
    for other in frames[1:]:
        if other is not first and other != first:
            raise FrameMismatch("operands live on different frames")
    return first


def labels_to_json(frame: Frame, mask: int) -> list[Any]:
    return [list(x) if isinstance(x, tuple) else x for x in frame.members(mask)]

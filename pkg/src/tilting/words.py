"""Reduced expressions in S_p for dominant labels, with per-prefix certificates."""

import logging
import re
from dataclasses import dataclass
from typing import Any, Dict, List, Sequence, Tuple

from src.blocks.levi_block import LeviDatum, OrbitLabel, block_base, in_CI_closure, in_WIp
from src.common.errors import CheckFailed, NotAWallReflection, NotDominant, NotRegular, NotInCI, ParseError
from src.geometry.affine_weyl import Reflection, as_reflection, identity, simple_reflections_Sp
from src.geometry.alcoves import BELOW, alcove_walls_lower, d_value, is_dominant, is_regular, single_reflection_compare
from src.geometry.rootdata import RootSystem, Weight

logger = logging.getLogger(__name__)

_LETTER = re.compile(r"^\s*(-?\d+)\s*:\s*(\d+)\s*$")


@dataclass(frozen=True)
class Certificate:
    """ascent: previous prefix target lies strictly below the new one.
    regular: the conjugate s_1...s_i...s_1 lies outside W_{I,p}.
    """
    ascent: bool
    regular: bool

    @property
    def holds(self) -> bool:
        return self.ascent and self.regular


@dataclass(frozen=True)
class ReducedWord:
    """letters s_1..s_n; prefix_targets[i] = s_1...s_i . lambda_star (prefix_targets[0] = lambda_star)."""
    letters: Tuple[Reflection, ...]
    prefix_targets: Tuple[Weight, ...]
    certificates: Tuple[Certificate, ...]

    @property
    def target(self) -> Weight:
        return self.prefix_targets[-1]

    @property
    def certified(self) -> bool:
        return all(c.holds for c in self.certificates)

    def __len__(self) -> int:
        return len(self.letters)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "word": format_word(self.letters),
            "letters": [s.label for s in self.letters],
            "prefix_targets": [list(t) for t in self.prefix_targets],
            "certificates": [{"ascent": c.ascent, "regular": c.regular} for c in self.certificates],
        }


def parse_word(rs: RootSystem, p: int, text: str) -> Tuple[Reflection, ...]:
    """Read "m:i,m:i,..." where m = n p is the hyperplane level and i the root index."""
    letters = []
    for part in (x for x in text.split(",") if x.strip()):
        m = _LETTER.match(part)
        if not m:
            raise ParseError(f"cannot read word letter {part!r}", text=text)
        level, index = int(m.group(1)), int(m.group(2)) - 1
        if level % p:
            raise ParseError(f"level {level} is not a multiple of p={p}", text=text)
        if not 0 <= index < len(rs.positive_roots):
            raise ParseError(f"no positive root with index {index + 1}", text=text)
        letters.append(Reflection(index, level // p, p, rs))
    return tuple(letters)


def format_word(letters: Sequence[Reflection]) -> str:
    return ",".join(f"{s.level}:{s.beta_index + 1}" for s in letters)


def check_letters(letters: Sequence[Reflection], L: LeviDatum) -> None:
    walls = simple_reflections_Sp(L.rs, L.p)
    for s in letters:
        if s not in walls:
            raise NotAWallReflection(f"{s.label} is not in S_p", reflection=s.label)


def certify_word(letters: Sequence[Reflection], L: LeviDatum) -> ReducedWord:
    """Recompute prefix targets and both certificate families from the letters."""
    check_letters(letters, L)
    lam = L.rs.zero
    prefix = identity(L.rs, L.p)
    targets = [lam]
    certificates = []
    for s in letters:
        conj = prefix.conjugate(s.elt)
        prefix = prefix.compose(s.elt)
        target = prefix.dot(lam)
        ascent = single_reflection_compare(as_reflection(conj), target) == BELOW
        certificates.append(Certificate(ascent=ascent, regular=not in_WIp(conj, L)))
        targets.append(target)
    return ReducedWord(tuple(letters), tuple(targets), tuple(certificates))


def _descent(nu: Weight, L: LeviDatum) -> List[Reflection]:
    """Reflect down through lower walls at positive level until reaching C.

    Only roots outside ZI are used, so every step lies outside W_{I,p}.
    """
    rs, p = L.rs, L.p
    steps = []
    cur = nu
    while d_value(rs, cur, p) > 0:
        lower = [
            w for w in alcove_walls_lower(rs, cur, p)
            if w.n >= 1 and w.beta_index not in L.levi_roots
        ]
        if not lower:
            raise CheckFailed(f"no descending wall at {list(cur)}", label=cur)
        wall = min(lower, key=lambda w: w.beta_index)
        r = Reflection(wall.beta_index, wall.n, p, rs)
        cur = r.dot(cur)
        steps.append(r)
    if cur != rs.zero:
        raise CheckFailed(f"descent from {list(nu)} ended at {list(cur)}", label=nu)
    return steps


def domexp_word(nu: OrbitLabel, L: LeviDatum) -> ReducedWord:
    """A certified word s_1...s_n in S_p with s_1...s_n . 0 == nu."""
    rs, p = L.rs, L.p
    nu = rs.check_weight(nu)
    if not is_regular(rs, nu, p) or block_base(nu, L) != rs.zero:
        raise NotRegular(f"{list(nu)} is not in W_p . 0", weight=nu)
    if not is_dominant(rs, nu):
        raise NotDominant(f"{list(nu)} is not dominant", weight=nu)
    if not in_CI_closure(nu, L):
        raise NotInCI(f"{list(nu)} is not in C-bar_I", weight=nu)

    steps = _descent(nu, L)
    k = len(steps)
    walls = simple_reflections_Sp(rs, p)
    letters = []
    for i in range(1, k + 1):
        idx = k - i
        v = identity(rs, p)
        for j in range(k - 1, idx, -1):
            v = v.compose(steps[j].elt)
        letter = as_reflection(v.conjugate(steps[idx].elt))
        if letter is None or letter not in walls:
            raise CheckFailed(f"conjugated step {i} is not a wall of C", label=nu)
        letters.append(letter)

    word = certify_word(letters, L)
    if word.target != nu:
        raise CheckFailed(f"word reaches {list(word.target)}, expected {list(nu)}", label=nu)
    for i, cert in enumerate(word.certificates, start=1):
        if not cert.holds:
            raise CheckFailed(f"certificate {i} fails for {list(nu)}", label=nu, position=i)
    logger.debug(f"DomExp word for {nu}: {format_word(letters)}")
    return word

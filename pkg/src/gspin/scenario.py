"""Scenario files: a JSON-compatible tree declaring characters, square
classes, cuspidal handles, parameters and requested computations.

Exact rationals are serialized as strings 'p/q'.  All referenced ids must be
declared; handle signs may be left out, in which case the duality type is
resolved by the GL2/GL4 alternative at load time."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .characters import AlphaClass, CharacterGroup, HeckeCharacterHandle
from .exactlin import ExactMatrix
from .params import (
    CuspidalHandle,
    FormalParameter,
    TwoGroupCharacter,
    check_selfdual,
    gl2_alternative,
    gl4_alternative,
)


class ScenarioError(ValueError):
    """Semantic error in a scenario file (undeclared id, bad invariant)."""


@dataclass
class ParameterFixture:
    name: str
    parameter: FormalParameter
    root_number_minus: bool
    local_data: list[tuple[str, dict[str, int]]] = field(default_factory=list)


@dataclass
class Scenario:
    group: CharacterGroup
    classes: dict[str, AlphaClass]
    characters: dict[str, HeckeCharacterHandle]
    cuspidals: dict[str, CuspidalHandle]
    parameters: dict[str, ParameterFixture]
    requests: list[dict[str, Any]]


def parse_rational(text: str | int) -> Fraction:
    if isinstance(text, int):
        return Fraction(text)
    return Fraction(text)


def parse_matrix(rows: list[list]) -> ExactMatrix:
    return ExactMatrix([[parse_rational(x) for x in row] for row in rows])


def load_scenario(text: str) -> Scenario:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise ScenarioError(f"parse error at line {err.lineno}, column {err.colno}: {err.msg}")
    return build_scenario(doc)


def build_scenario(doc: dict) -> Scenario:
    if not isinstance(doc, dict):
        raise ScenarioError("scenario root must be an object")
    group = CharacterGroup()
    characters: dict[str, HeckeCharacterHandle] = {}

    chars_doc = doc.get("characters", {})
    for gen in chars_doc.get("generators", []):
        name = gen["name"]
        handle = group.declare_generator(name, order_two=bool(gen.get("order_two", False)))
        characters[name] = handle
    characters["1"] = group.trivial()
    for name, node in chars_doc.get("defined", {}).items():
        free = {k: int(v) for k, v in node.get("free", {}).items()}
        torsion = list(node.get("torsion", []))
        try:
            characters[name] = group.element(free, torsion)
        except ValueError as err:
            raise ScenarioError(f"character {name!r}: {err}")

    def char_ref(name: str) -> HeckeCharacterHandle:
        if name not in characters:
            raise ScenarioError(f"undeclared character {name!r}")
        return characters[name]

    classes: dict[str, AlphaClass] = {"1": group.declare_class("1")}
    for cls in doc.get("classes", []):
        token = cls["token"]
        classes[token] = group.declare_class(token, char_ref(cls["character"]))

    cuspidals: dict[str, CuspidalHandle] = {}
    for node in doc.get("cuspidals", []):
        ident = node["id"]
        handle = CuspidalHandle(
            id=ident,
            N=int(node["N"]),
            central_character=char_ref(node["central_character"]),
            chi=char_ref(node["chi"]),
            sign=node.get("sign"),
            tensor_origin=tuple(node["tensor_origin"]) if node.get("tensor_origin") else None,
        )
        try:
            check_selfdual(group, handle)
            if handle.sign is None:
                if handle.N == 1:
                    handle = CuspidalHandle(
                        id=ident,
                        N=1,
                        central_character=handle.central_character,
                        chi=handle.chi,
                        sign=+1,
                    )
                elif handle.N == 2:
                    handle = gl2_alternative(group, handle)
                elif handle.N == 4:
                    handle = gl4_alternative(group, handle).handle
        except ValueError as err:
            raise ScenarioError(f"cuspidal {ident!r}: {err}")
        cuspidals[ident] = handle

    parameters: dict[str, ParameterFixture] = {}
    for node in doc.get("parameters", []):
        name = node["name"]
        summands = []
        for ref, d in node.get("summands", []):
            if ref not in cuspidals:
                raise ScenarioError(f"parameter {name!r}: undeclared summand {ref!r}")
            summands.append((cuspidals[ref], int(d)))
        try:
            param = FormalParameter(chi=char_ref(node["chi"]), summands=tuple(summands))
        except ValueError as err:
            raise ScenarioError(f"parameter {name!r}: {err}")
        parameters[name] = ParameterFixture(
            name=name,
            parameter=param,
            root_number_minus=bool(node.get("root_number_minus", False)),
        )
    for pname, places in doc.get("local_data", {}).items():
        if pname not in parameters:
            raise ScenarioError(f"local data for undeclared parameter {pname!r}")
        fixture = parameters[pname]
        for place, values in places:
            fixture.local_data.append((place, {k: int(v) for k, v in values.items()}))

    requests = doc.get("requests", [])
    if not isinstance(requests, list):
        raise ScenarioError("requests must be a list")
    return Scenario(
        group=group,
        classes=classes,
        characters=characters,
        cuspidals=cuspidals,
        parameters=parameters,
        requests=requests,
    )


def local_characters(fixture: ParameterFixture, sgroup) -> list[tuple[str, TwoGroupCharacter]]:
    out = []
    for place, values in fixture.local_data:
        try:
            ch = TwoGroupCharacter.make(sgroup, values)
        except (KeyError, ValueError) as err:
            raise ScenarioError(f"local character at {place!r}: {err}")
        out.append((place, ch))
    return out

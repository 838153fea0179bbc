"""Input schema validation for scenario payloads."""

from __future__ import annotations

from typing import Any, Mapping

from ..field import is_prime
from .exceptions import ScenarioError

SCENARIO_SCHEMES = (
    "auto",
    "replication",
    "lcc",
    "curve_direct",
    "homogeneous",
    "nonhomogeneous",
    "intersecting",
    "composite",
    "line_composite",
)
INPUT_GENERATORS = ("generic", "dependent", "collinear", "crossing")
FUNCTION_GENERATORS = ("random",)
ADVERSARY_MODES = ("exhaustive", "random")


class ScenarioValidator:
    """Centralized runtime validation for scenario files."""

    @staticmethod
    def _int(value: Any, name: str, *, minimum: int | None = None) -> int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ScenarioError(f"{name} must be an integer")
        if minimum is not None and value < minimum:
            raise ScenarioError(f"{name} must be at least {minimum}")
        return value

    @classmethod
    def validate_modulus(cls, modulus: Any) -> int:
        value = cls._int(modulus, "modulus", minimum=2)
        if value.bit_length() > 61:
            raise ScenarioError("modulus must fit in 61 bits")
        if not is_prime(value):
            raise ScenarioError(f"modulus {value} is not prime")
        return value

    @classmethod
    def validate_literal(cls, literal: Any, modulus: int) -> list[list[dict[str, Any]]]:
        if not isinstance(literal, list) or not literal:
            raise ScenarioError("function literal must be a non-empty list of components")
        arity = None
        for component in literal:
            if not isinstance(component, list):
                raise ScenarioError("each function component must be a list of terms")
            for term in component:
                if not isinstance(term, Mapping) or set(term) != {"coeff", "exps"}:
                    raise ScenarioError('each term must be {"coeff": int, "exps": [int, ...]}')
                coeff = cls._int(term["coeff"], "coeff", minimum=0)
                if coeff >= modulus:
                    raise ScenarioError(f"coeff {coeff} is outside GF({modulus})")
                exps = term["exps"]
                if not isinstance(exps, list):
                    raise ScenarioError("exps must be a list of integers")
                for e in exps:
                    cls._int(e, "exponent", minimum=0)
                if arity is None:
                    arity = len(exps)
                elif len(exps) != arity:
                    raise ScenarioError("all terms must share the same number of exponents")
        return literal

    @classmethod
    def validate_function(cls, function: Any, modulus: int) -> dict[str, Any]:
        if not isinstance(function, Mapping):
            raise ScenarioError("function must be a mapping")
        if "literal" in function:
            cls.validate_literal(function["literal"], modulus)
            return dict(function)
        generator = function.get("generator")
        if generator not in FUNCTION_GENERATORS:
            raise ScenarioError(f"function needs a literal or a generator in {', '.join(FUNCTION_GENERATORS)}")
        cls._int(function.get("degree"), "function.degree", minimum=0)
        cls._int(function.get("m"), "function.m", minimum=1)
        cls._int(function.get("u", 1), "function.u", minimum=1)
        cls._int(function.get("seed", 0), "function.seed")
        if not isinstance(function.get("homogeneous", False), bool):
            raise ScenarioError("function.homogeneous must be a boolean")
        return dict(function)

    @classmethod
    def validate_inputs(cls, inputs: Any, modulus: int) -> dict[str, Any]:
        if not isinstance(inputs, Mapping):
            raise ScenarioError("inputs must be a mapping")
        if "points" in inputs:
            points = inputs["points"]
            if not isinstance(points, list) or not points:
                raise ScenarioError("inputs.points must be a non-empty list")
            dims = set()
            for point in points:
                if not isinstance(point, list) or not point:
                    raise ScenarioError("each input point must be a non-empty list of integers")
                for value in point:
                    value = cls._int(value, "point coordinate", minimum=0)
                    if value >= modulus:
                        raise ScenarioError(f"point coordinate {value} is outside GF({modulus})")
                dims.add(len(point))
            if len(dims) != 1:
                raise ScenarioError("input points must share one dimension")
            return dict(inputs)
        generator = inputs.get("generator")
        if generator not in INPUT_GENERATORS:
            raise ScenarioError(f"inputs need points or a generator in {', '.join(INPUT_GENERATORS)}")
        if generator != "crossing":
            cls._int(inputs.get("k"), "inputs.k", minimum=1)
        cls._int(inputs.get("m"), "inputs.m", minimum=1)
        cls._int(inputs.get("seed", 0), "inputs.seed")
        if inputs.get("mode", "homogeneous") not in ("homogeneous", "affine"):
            raise ScenarioError("inputs.mode must be homogeneous or affine")
        return dict(inputs)

    @classmethod
    def validate_scenario(cls, payload: Any) -> dict[str, Any]:
        if not isinstance(payload, Mapping):
            raise ScenarioError("scenario must be a JSON object")
        for key in ("modulus", "function", "inputs"):
            if key not in payload:
                raise ScenarioError(f"scenario is missing {key!r}")
        modulus = cls.validate_modulus(payload["modulus"])
        scenario = dict(payload)
        scenario["function"] = cls.validate_function(payload["function"], modulus)
        scenario["inputs"] = cls.validate_inputs(payload["inputs"], modulus)
        scenario["s"] = cls._int(payload.get("s", 0), "s", minimum=0)
        scenario["b"] = cls._int(payload.get("b", 0), "b", minimum=0)
        scenario["seed"] = cls._int(payload.get("seed", 0), "seed")
        scheme = payload.get("scheme", "auto")
        if scheme not in SCENARIO_SCHEMES:
            raise ScenarioError(f"scheme must be one of {', '.join(SCENARIO_SCHEMES)}")
        scenario["scheme"] = scheme
        adversary = payload.get("adversary", "exhaustive")
        if adversary not in ADVERSARY_MODES:
            raise ScenarioError(f"adversary must be one of {', '.join(ADVERSARY_MODES)}")
        scenario["adversary"] = adversary
        if payload.get("sparsity") is not None:
            scenario["sparsity"] = cls._int(payload["sparsity"], "sparsity", minimum=2)
        name = payload.get("name", "")
        if not isinstance(name, str):
            raise ScenarioError("name must be a string")
        scenario["name"] = name
        return scenario

    @classmethod
    def validate_scenario_set(cls, payload: Any) -> list[dict[str, Any]]:
        if isinstance(payload, Mapping):
            payload = payload.get("scenarios")
        if not isinstance(payload, list):
            raise ScenarioError('sweep file must be a JSON array or {"scenarios": [...]}')
        return [cls.validate_scenario(item) for item in payload]

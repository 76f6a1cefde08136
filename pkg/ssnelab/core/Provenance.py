"""
-------------------------------------------------
SSNELab - Provenance of derived moduli and rates
-------------------------------------------------
"""

from typing import Any, Dict, List, Optional, Tuple
import math, numbers

def _plain(value: Any) -> Any:
    """Reduce a parameter value to a JSON-compatible python value."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, numbers.Integral):
        return int(value)
    if isinstance(value, numbers.Real):
        v = float(value)
        return v if math.isfinite(v) else str(v)
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if hasattr(value, 'tolist'):
        return _plain(value.tolist())
    return str(value)


class Provenance:
    """
    Derivation tree of a modulus or bound: the rule that produced it, its scalar
    parameters and the provenance of every modulus it was derived from.
    """

    def __init__(self, rule: str, inputs: Optional[List['Provenance']] = None, **params: Any) -> None:
        assert isinstance(rule, str) and len(rule), "Provenance needs a rule name."
        self.rule: str = rule
        self.params: Dict[str, Any] = {k: _plain(v) for k, v in params.items()}
        self.inputs: List[Provenance] = list(inputs) if inputs is not None else []

    def items(self) -> List[Tuple[str, Any]]:
        return [(k, v) for k, v in self.params.items()]

    def depth(self) -> int:
        return 1 + max((p.depth() for p in self.inputs), default=0)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'rule': self.rule,
            'params': dict(self.params),
            'inputs': [p.to_dict() for p in self.inputs]
        }

    @staticmethod
    def fromDict(d: Dict[str, Any]) -> 'Provenance':
        return Provenance(d['rule'], [Provenance.fromDict(i) for i in d.get('inputs', [])], **d.get('params', {}))

    # =
    def __eq__(self, o: object) -> bool:
        return isinstance(o, Provenance) and self.to_dict() == o.to_dict()

    def __str__(self) -> str:
        s = self.rule
        if self.params:
            s += "(" + ";".join("%s=%s"%(k, v) for k, v in self.params.items()) + ")"
        if self.inputs:
            s += "[" + ",".join(str(p) for p in self.inputs) + "]"
        return s

    def __repr__(self) -> str:
        return "Provenance<%s>"%str(self)

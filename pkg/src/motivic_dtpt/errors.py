"""Exception types shared by every module.

Each error carries a stable ``code`` (used by the CLI's machine-readable
error object) and the name of the module that raised it.
"""


class DTPTError(Exception):
    code = "Error"
    module = "motivic_dtpt"

    def __init__(self, message="", **details):
        super().__init__(message or self.code)
        self.details = details

    def to_json(self):
        out = {"code": self.code, "module": self.module, "message": str(self)}
        if self.details:
            out["details"] = {k: _jsonable(v) for k, v in self.details.items()}
        return out


def _jsonable(v):
    if isinstance(v, (str, int, float, bool)) or v is None:
        return v
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return str(v)


def _make(name, module):
    return type(name, (DTPTError,), {"code": name, "module": module})


# motive-ring
FlooredValue = _make("FlooredValue", "motive-ring")

# quantum-torus
FramingOverflow = _make("FramingOverflow", "quantum-torus")
PolicyMismatch = _make("PolicyMismatch", "quantum-torus")
EmptyMonomial = _make("EmptyMonomial", "quantum-torus")
NonUnitConstantTerm = _make("NonUnitConstantTerm", "quantum-torus")
FramedDivision = _make("FramedDivision", "quantum-torus")
NonUnitScalar = _make("NonUnitScalar", "quantum-torus")

# toric-quiver
BadCounts = _make("BadCounts", "toric-quiver")
BadRange = _make("BadRange", "toric-quiver")
BadLabel = _make("BadLabel", "toric-quiver")
NotClosed = _make("NotClosed", "toric-quiver")

# root-system
BadZeta = _make("BadZeta", "root-system")

# dt-series
MissingFloor = _make("MissingFloor", "dt-series")
NonGenericZeta = _make("NonGenericZeta", "dt-series")
StrategyMismatch = _make("StrategyMismatch", "dt-series")
BadInterval = _make("BadInterval", "dt-series")
FloorNotReached = _make("FloorNotReached", "dt-series")

# plethystics
NonzeroConstantTerm = _make("NonzeroConstantTerm", "plethystics")
NonIntegerExponent = _make("NonIntegerExponent", "plethystics")

# cli
BadConfig = _make("BadConfig", "cli")

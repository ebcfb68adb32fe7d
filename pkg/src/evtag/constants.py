__all__ = [
    "EVENT_CLASS_NAMES",
    "OUTSIDE_LABEL",
    "LABELS",
    "LABEL_INDEX",
    "N_LABELS",
    "PAD_CHAR",
    "UNK_CHAR",
    "MISSING_POS",
    "UNK_VECTOR_SEED",
    "UNK_VECTOR_SCALE",
    "CHI2_CRITICAL_005",
    "MODEL_MAGIC",
    "MODEL_FORMAT_VERSION",
]

EVENT_CLASS_NAMES: tuple[str, ...] = (
    "OCCURRENCE",
    "ASPECTUAL",
    "I_STATE",
    "I_ACTION",
    "PERCEPTION",
    "REPORTING",
    "STATE",
)
OUTSIDE_LABEL: str = "O"
# "O" first, then a B-/I- pair per class in canonical class order
LABELS: tuple[str, ...] = (OUTSIDE_LABEL,) + tuple(
    label for name in EVENT_CLASS_NAMES for label in (f"B-{name}", f"I-{name}")
)
LABEL_INDEX: dict[str, int] = {label: i for i, label in enumerate(LABELS)}
N_LABELS: int = len(LABELS)

# Reserved character-vocabulary entries; never produced by a real token
PAD_CHAR: str = "<pad>"
UNK_CHAR: str = "<unk>"

MISSING_POS: str = "_"

UNK_VECTOR_SEED: int = 20180901
UNK_VECTOR_SCALE: float = 0.25

# chi-squared critical value, 1 degree of freedom, alpha = 0.05
CHI2_CRITICAL_005: float = 3.841

MODEL_MAGIC: bytes = b"EVTAGMDL"
MODEL_FORMAT_VERSION: int = 1

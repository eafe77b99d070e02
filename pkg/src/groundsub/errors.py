"""Exception hierarchy.

Every error raised by the toolkit derives from :class:`GroundSubgroupError`.
Errors that signal an instance beyond the configured resource caps also
derive from :class:`CapExceeded`; the CLI maps those to exit code 3.
"""


class GroundSubgroupError(Exception):
    """Base class for all toolkit errors."""

    code = "error"


class CapExceeded(GroundSubgroupError):
    """An instance is beyond the configured size cap."""

    code = "cap_exceeded"


# group-core


class TableNotAGroup(GroundSubgroupError, ValueError):
    code = "table_not_a_group"

    def __init__(self, axiom, witness):
        self.axiom = axiom
        self.witness = tuple(witness)
        super().__init__(f"table violates {axiom} at {self.witness}")


class ModeMismatch(GroundSubgroupError, ValueError):
    code = "mode_mismatch"


class UnknownGenerator(GroundSubgroupError, KeyError):
    code = "unknown_generator"


class WordSyntaxError(GroundSubgroupError, ValueError):
    code = "word_syntax"


class OrderCapExceeded(CapExceeded):
    code = "order_cap_exceeded"

    def __init__(self, cap):
        self.cap = cap
        super().__init__(f"group order exceeds cap {cap}")


# partition


class InvalidPartition(GroundSubgroupError, ValueError):
    code = "invalid_partition"


class EmptySet(GroundSubgroupError, ValueError):
    code = "empty_set"


class AmbientMismatch(GroundSubgroupError, TypeError):
    code = "ambient_mismatch"


class GroupTooLarge(CapExceeded):
    code = "group_too_large"


class TooLarge(CapExceeded):
    code = "too_large"


# cyclic


class SubsetCountCapExceeded(CapExceeded):
    code = "subset_cap_exceeded"


class HypothesisFails(GroundSubgroupError, ValueError):
    code = "hypothesis_fails"


# freegrp


class IdentityWord(GroundSubgroupError, ValueError):
    code = "identity_word"


class EmptyStar(GroundSubgroupError, ValueError):
    code = "empty_star"


class ContainsIdentity(GroundSubgroupError, ValueError):
    code = "contains_identity"


# cayley


class SearchCapExceeded(CapExceeded):
    code = "search_cap_exceeded"


class ColorOutOfRange(GroundSubgroupError, ValueError):
    code = "color_out_of_range"


class PartialConfiguration(GroundSubgroupError, ValueError):
    code = "partial_configuration"


class MissingCosetColor(GroundSubgroupError, KeyError):
    code = "missing_coset_color"


class QTooSmall(GroundSubgroupError, ValueError):
    code = "q_too_small"


class StateSpaceTooLarge(CapExceeded):
    code = "state_space_too_large"

"""Exception hierarchy shared by every module."""


class DioidPartitionError(Exception):
    pass


class GroupError(DioidPartitionError, ValueError):
    """Invalid group descriptor or Cayley table."""


class NotASubgroup(GroupError):
    pass


class NotNormal(GroupError):
    pass


class PartitionError(DioidPartitionError, ValueError):
    """A raw list of parts is not a partition of the group."""


class PreconditionError(DioidPartitionError, ValueError):
    """An operation was called outside its stated hypotheses."""


class BudgetExceeded(DioidPartitionError):
    """An exhaustive sweep would exceed its configured cap."""


class AxiomError(DioidPartitionError):
    """A partition fails one of the d-partition axioms; carries the report."""

    def __init__(self, report):
        self.report = report
        super().__init__(report.describe())


class NotSPartition(DioidPartitionError):
    """Pair counts are not constant over some target part.

    ``witness`` is ``(i, j, k, z1, z2)``: two elements of part ``k`` receiving
    different numbers of products from ``part_i x part_j``.
    """

    def __init__(self, witness):
        self.witness = witness
        i, j, k, z1, z2 = witness
        super().__init__(
            f"pair count for parts ({i}, {j}) differs at {z1} and {z2} inside part {k}"
        )


class TheoremViolation(DioidPartitionError, RuntimeError):
    """A proven identity failed on concrete data. Always a library bug."""

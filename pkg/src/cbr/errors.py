"""Exception types raised across the package."""


class ChoiceDataError(ValueError):
    """A choice-data document could not be turned into a valid choice function."""

    def __init__(self, message, menu=None):
        super().__init__(message)
        self.menu = menu


class MalformedDocument(ChoiceDataError):
    pass


class UnknownAlternative(ChoiceDataError):
    pass


class DuplicateMenu(ChoiceDataError):
    pass


class MissingMenu(ChoiceDataError):
    pass


class ChoiceNotInMenu(ChoiceDataError):
    pass


class SizeCapExceeded(ValueError):
    pass


class NotRepresentable(ValueError):
    """Raised by identification routines when A1-A4 fail."""

    def __init__(self, verdict):
        super().__init__(f"choice function is not CBR-representable: {verdict.axiom.value} fails")
        self.verdict = verdict


class AxiomFailure(ValueError):
    """Synthesis refused because an axiom fails; carries the failing verdict."""

    def __init__(self, verdict):
        super().__init__(f"axiom {verdict.axiom.value} fails: {verdict.witness}")
        self.verdict = verdict


class InternalInvariantBreach(RuntimeError):
    pass


class InvalidRepresentation(ValueError):
    """A rationale pair fails to pick a unique alternative on some menus."""

    def __init__(self, menus, universe):
        self.menus = list(menus)
        self.universe = universe
        shown = ", ".join(universe.fmt(m) for m in self.menus[:5])
        more = "" if len(self.menus) <= 5 else f" (+{len(self.menus) - 5} more)"
        super().__init__(f"no unique choice on {len(self.menus)} menu(s): {shown}{more}")


class NotDecomposable(ValueError):
    pass

"""Exception hierarchy shared by all modules."""


class GameError(Exception):
    """Base class for every error raised by this package."""


class ArenaError(GameError):
    pass


class EmptyActionSet(ArenaError):
    def __init__(self, state):
        self.state = state
        super().__init__(f"state {state!r} has no available action")


class ProbabilityMass(ArenaError):
    def __init__(self, state, action, total):
        self.state, self.action, self.total = state, action, total
        super().__init__(
            f"probabilities of ({state!r}, {action!r}) sum to {total}, not 1")


class NonPositiveProbability(ArenaError):
    def __init__(self, transition):
        self.transition = transition
        super().__init__(f"transition {transition} has non-positive probability")


class DuplicateTransition(ArenaError):
    def __init__(self, transition):
        self.transition = transition
        super().__init__(f"transition {transition} listed twice")


class UnknownState(ArenaError):
    def __init__(self, state):
        self.state = state
        super().__init__(f"unknown state {state!r}")


class UnknownTransition(ArenaError):
    def __init__(self, transition):
        self.transition = transition
        super().__init__(f"{transition} is not a transition of the arena")


class PartialActionRemoval(ArenaError):
    def __init__(self, state, action):
        self.state, self.action = state, action
        super().__init__(
            f"subarena keeps only part of the transitions of ({state!r}, {action!r})")


class DeadState(ArenaError):
    def __init__(self, state):
        self.state = state
        super().__init__(f"state {state!r} keeps no action in the subarena")


class InvalidHistory(ArenaError):
    def __init__(self, history, reason=""):
        self.history = history
        super().__init__(f"invalid history {history!r}" + (f": {reason}" if reason else ""))


class UnavailableAction(ArenaError):
    def __init__(self, state, action):
        self.state, self.action = state, action
        super().__init__(f"action {action!r} is not available at {state!r}")


class ArenaFormatError(ArenaError):
    """Malformed arena document."""


class SeparationViolated(GameError):
    def __init__(self, path):
        self.path = path
        super().__init__("path between two copies avoids the separation state: "
                         + " -> ".join(map(str, path)))


class Incompatible(GameError):
    def __init__(self, state, action):
        self.state, self.action = state, action
        super().__init__(
            f"strategy plays {action!r} at {state!r}, which the subarena removed")


class SingularSystem(GameError):
    pass


class MissingPriorities(GameError):
    def __init__(self):
        super().__init__("the arena carries no priority map")


class NotDeterministic(GameError):
    pass


class TagMismatch(GameError):
    pass


class NotOnePlayer(GameError):
    pass


class NoUniformOptimum(GameError):
    """No single deterministic stationary strategy is optimal from every state.

    ``witness`` holds whatever evidence the solver found: the pair of
    incomparable or better outcomes and the strategies producing them.
    """

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class PreferenceNotTotalEnough(GameError):
    pass


class NoSaddle(GameError):
    pass


class EnumerationBoundExceeded(GameError):
    def __init__(self, count, bound):
        self.count, self.bound = count, bound
        super().__init__(f"{count} profiles exceed the enumeration bound {bound}")

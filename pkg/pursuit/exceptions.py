class PursuitError(Exception):
    pass


class StateBudgetExceeded(PursuitError):
    def __init__(self, states: int, budget: int):
        self.states = states
        self.budget = budget
        super().__init__(
            f"Game has {states} positions, over the state budget of {budget}; "
            f"raise --state-budget or COPS_STATE_BUDGET to solve it."
        )


class SolverInvariantError(PursuitError):
    """A replayed game contradicted the solved ranks."""

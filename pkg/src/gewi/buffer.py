from collections import deque

from .errors import BufferEmptyError, BufferFullError


class EntBuffer:
    """FIFO store of locally held EPR halves.

    ``capacity=None`` means unbounded.
    """

    __slots__ = ("_queue", "capacity")

    def __init__(self, capacity=None):
        if capacity is not None and capacity < 0:
            raise ValueError("capacity must be non-negative")
        self._queue = deque()
        self.capacity = capacity

    def __len__(self):
        return len(self._queue)

    def __bool__(self):
        return bool(self._queue)

    def __iter__(self):
        return iter(self._queue)

    def __repr__(self):
        cap = "inf" if self.capacity is None else self.capacity
        return f"EntBuffer({len(self._queue)}/{cap})"

    @property
    def is_full(self) -> bool:
        return self.capacity is not None and len(self._queue) >= self.capacity

    def room(self, limit: int) -> int:
        """How many of ``limit`` more halves would fit."""
        if self.capacity is None:
            return limit
        return max(0, min(limit, self.capacity - len(self._queue)))

    def push(self, q) -> None:
        if self.is_full:
            raise BufferFullError(f"buffer at capacity {self.capacity}")
        self._queue.append(q)

    def pop(self):
        try:
            return self._queue.popleft()
        except IndexError:
            raise BufferEmptyError("entanglement buffer is empty") from None

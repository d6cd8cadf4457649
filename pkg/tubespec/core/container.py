"""Service container for the computation layer.

Services are registered against their interface and built on first use.
Constructor arguments are resolved from their annotations, so a service that
takes ``AppConfig`` or ``ISturmSolver`` gets the registered instance. Tests
swap a service with ``register_instance`` before anything resolves it.
"""

import inspect
from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable, Optional, TypeVar, Union, get_args, get_origin, get_type_hints

T = TypeVar("T")


class Lifetime(str, Enum):
    SINGLETON = "singleton"
    TRANSIENT = "transient"


@dataclass(frozen=True)
class Registration:
    """How one interface is built and how long the result lives."""

    interface: type
    build: Callable[[], Any]
    lifetime: Lifetime


class Container:
    """Registry of services keyed by interface, with cached singletons."""

    def __init__(self):
        self._registrations: dict[type, Registration] = {}
        self._instances: dict[type, Any] = {}

    def register_singleton(self, interface: type[T], implementation: type[T]) -> "Container":
        """Build ``implementation`` once, injecting its constructor arguments."""
        return self._add(interface, lambda: self._construct(implementation), Lifetime.SINGLETON)

    def register_factory(
        self,
        interface: type[T],
        factory: Callable[[], T],
        lifetime: Lifetime = Lifetime.TRANSIENT,
    ) -> "Container":
        return self._add(interface, factory, lifetime)

    def register_instance(self, interface: type[T], instance: T) -> "Container":
        self._add(interface, lambda: instance, Lifetime.SINGLETON)
        self._instances[interface] = instance
        return self

    def _add(self, interface: type, build: Callable[[], Any], lifetime: Lifetime) -> "Container":
        self._registrations[interface] = Registration(interface, build, lifetime)
        self._instances.pop(interface, None)
        return self

    def get(self, interface: type[T]) -> T:
        """Resolve a service.

        Raises:
            ValueError: If nothing is registered for ``interface``
        """
        registration = self._registrations.get(interface)
        if registration is None:
            raise ValueError(f"Service {interface.__name__} is not registered")
        if interface in self._instances:
            return self._instances[interface]

        instance = registration.build()
        if registration.lifetime is Lifetime.SINGLETON:
            self._instances[interface] = instance
        return instance

    def is_registered(self, interface: type) -> bool:
        return interface in self._registrations

    def clear(self) -> None:
        self._registrations.clear()
        self._instances.clear()

    def _construct(self, implementation: type) -> Any:
        hints = get_type_hints(implementation.__init__)
        arguments = {}
        for name, parameter in inspect.signature(implementation.__init__).parameters.items():
            if name == "self":
                continue
            if name not in hints:
                raise ValueError(f"Parameter {name} in {implementation.__name__} has no type annotation")
            dependency = _strip_optional(hints[name])
            # optional collaborators keep their default when nothing is registered
            if parameter.default is not inspect.Parameter.empty and not self.is_registered(dependency):
                continue
            arguments[name] = self.get(dependency)
        return implementation(**arguments)


def _strip_optional(annotation: Any) -> Any:
    if get_origin(annotation) is Union:
        members = [arg for arg in get_args(annotation) if arg is not type(None)]
        if len(members) == 1:
            return members[0]
    return annotation


_container: Optional[Container] = None


def get_container() -> Container:
    """Process-wide container used by the command layer."""
    global _container
    if _container is None:
        _container = Container()
    return _container

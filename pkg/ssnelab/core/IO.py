"""
-------------------------------------------------
SSNELab - Configurable attributes of workflow steps
-------------------------------------------------
"""

from typing import Any, Callable, Optional, Type, TypeVar
from typing_extensions import get_origin
from .Error import ConfigError
from .Module import Module

T = TypeVar('T', bound=Module)
V = TypeVar('V')
W = TypeVar('W')


class IO:

    @classmethod
    def Config(cls: Type['IO'], name: str, type: Type[V], default: W, factory: Callable[[W], V] = lambda x: x, the: Optional[str] = None) -> Callable[[Type[T]], Type[T]]:
        """
        Declare `name` as a configurable attribute of a Module class.
        Resolution: local config (execute chain entry) > modules.<ClassName> > default.
        """
        def wrapper(dcls: Type[T]) -> Type[T]:

            # assert the class has the specified attribute
            if not name in dcls.__annotations__:
                raise TypeError(f"Class does not have attribute {name}")

            if dcls.__annotations__[name] != type:
                raise TypeError(f"Configurable attribute '{name}' must be of type {type}")

            if default is not None and not isinstance(factory(default), get_origin(type) or type):
                raise TypeError(f"Default value of '{name}' must be of type {type}")

            # getter: class attribute > config > default
            def getAttr(self: T, attr_name=name) -> V:
                clsattr = "_ssnelab_configurable__" + attr_name
                if not hasattr(self, clsattr):
                    value = factory(self.getConfiguration(attr_name, default))
                    if value is not None and not isinstance(value, get_origin(type) or type):
                        raise ConfigError(f"{dcls.__name__}.{attr_name} must be of type {type}, got {value!r}.")
                    setattr(self, clsattr, value)
                return getattr(self, clsattr)

            # setter
            def setAttr(self: T, value: V, attr_name=name) -> None:
                if not isinstance(value, get_origin(type) or type):
                    raise TypeError(f"Configurable attribute must be of type {type}")
                setattr(self, "_ssnelab_configurable__" + attr_name, value)

            prop: property = property(getAttr, setAttr, doc=the)
            setattr(dcls, name, prop)

            return dcls

        return wrapper

"""Configuration file parsing.

UTF-8 INI-style text: one [kb.<id>] section per knowledge base and an
optional [server] section. Relative paths are resolved against the config
file's directory.
"""
from __future__ import annotations

import configparser
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ParseError, ValidationError
from .kb import KBDescriptor

_SERVER_KEYS = {"port", "host", "cache_ttl", "static_dir"}
_KB_KEYS = {"name", "endpoint", "dump", "timeout", "page_size", "catalog", "alignments"}


@dataclass
class KBSetup:
    descriptor: KBDescriptor
    catalog_path: Path | None = None
    alignments_path: Path | None = None


@dataclass
class AppConfig:
    kbs: list[KBSetup] = field(default_factory=list)
    port: int = 8080
    host: str = "127.0.0.1"
    cache_ttl: float = 300.0
    static_dir: Path | None = None

    def kb(self, kb_id: str) -> KBSetup:
        for setup in self.kbs:
            if setup.descriptor.id == kb_id:
                return setup
        from .errors import NotFoundError

        raise NotFoundError(f"unknown KB id {kb_id!r}")


def _get_number(section, key: str, cast, default, where: str):
    raw = section.get(key)
    if raw is None:
        return default
    try:
        return cast(raw)
    except ValueError as exc:
        raise ParseError(f"{where}: bad {key} value {raw!r}") from exc


def load_config(path: str | Path) -> AppConfig:
    path = Path(path)
    parser = configparser.ConfigParser(interpolation=None, delimiters=("=",))
    try:
        with open(path, encoding="utf-8") as handle:
            parser.read_file(handle)
    except FileNotFoundError as exc:
        raise ValidationError(f"config file not found: {path}") from exc
    except (configparser.Error, UnicodeDecodeError) as exc:
        raise ParseError(f"{path}: {exc}") from exc

    base = path.parent
    config = AppConfig()
    for name in parser.sections():
        section = parser[name]
        if name == "server":
            unknown = set(section) - _SERVER_KEYS
            if unknown:
                raise ParseError(f"{path}: unknown [server] keys: {sorted(unknown)}")
            config.port = _get_number(section, "port", int, config.port, path)
            config.host = section.get("host", config.host)
            config.cache_ttl = _get_number(section, "cache_ttl", float, config.cache_ttl, path)
            static = section.get("static_dir")
            if static:
                config.static_dir = (base / static).resolve()
        elif name.startswith("kb."):
            kb_id = name[3:]
            unknown = {k for k in section if k not in _KB_KEYS and not k.startswith("prefix.")}
            if unknown:
                raise ParseError(f"{path}: unknown [{name}] keys: {sorted(unknown)}")
            dump = section.get("dump")
            descriptor = KBDescriptor(
                id=kb_id,
                name=section.get("name", kb_id),
                endpoint=section.get("endpoint"),
                dump=(base / dump).resolve() if dump else None,
                prefixes={
                    k[len("prefix.") :]: v for k, v in section.items() if k.startswith("prefix.")
                },
                timeout=_get_number(section, "timeout", float, 30.0, path),
                page_size=_get_number(section, "page_size", int, 1000, path),
            )
            catalog = section.get("catalog")
            alignments = section.get("alignments")
            config.kbs.append(
                KBSetup(
                    descriptor=descriptor,
                    catalog_path=(base / catalog).resolve() if catalog else None,
                    alignments_path=(base / alignments).resolve() if alignments else None,
                )
            )
        else:
            raise ParseError(f"{path}: unknown section [{name}]")
    if not config.kbs:
        raise ValidationError(f"{path}: no [kb.<id>] sections configured")
    seen = set()
    for setup in config.kbs:
        if setup.descriptor.id in seen:
            raise ValidationError(f"{path}: duplicate KB id {setup.descriptor.id!r}")
        seen.add(setup.descriptor.id)
    return config

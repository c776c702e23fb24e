"""
Database configuration and session management for the run ledger.
"""

from pathlib import Path
from typing import Dict, Generator

from sqlalchemy import create_engine
from sqlalchemy.engine import Engine
from sqlalchemy.orm import Session, declarative_base, sessionmaker

# Create base class for models
Base = declarative_base()

# Engines and session factories, one per database URL
_engines: Dict[str, Engine] = {}
_sessions: Dict[str, sessionmaker] = {}


def _ensure_sqlite_dir(url: str) -> None:
    prefix = "sqlite:///"
    if url.startswith(prefix) and url != "sqlite:///:memory:":
        Path(url[len(prefix):]).parent.mkdir(parents=True, exist_ok=True)


def get_engine(url: str, echo: bool = False) -> Engine:
    """Get database engine, creating it if it doesn't exist."""
    engine = _engines.get(url)
    if engine is None:
        _ensure_sqlite_dir(url)
        engine = create_engine(
            url,
            echo=echo,
            connect_args={"check_same_thread": False} if url.startswith("sqlite") else {},
        )
        _engines[url] = engine
    return engine


def get_session_local(url: str) -> sessionmaker:
    """Get the session factory for a URL, creating it if it doesn't exist."""
    factory = _sessions.get(url)
    if factory is None:
        factory = sessionmaker(autocommit=False, autoflush=False, bind=get_engine(url))
        _sessions[url] = factory
    return factory


def get_db(url: str) -> Generator[Session, None, None]:
    """Yield a session that is closed afterwards."""
    db = get_session_local(url)()
    try:
        yield db
    finally:
        db.close()


def create_tables(url: str, echo: bool = False) -> None:
    """Create all database tables."""
    # Import models so they register with Base
    from app.models.run import TuningObservation, TuningRun  # noqa: F401

    Base.metadata.create_all(bind=get_engine(url, echo=echo))


def dispose_engines() -> None:
    """Close every pooled connection (tests and long-lived processes)."""
    for engine in _engines.values():
        engine.dispose()
    _engines.clear()
    _sessions.clear()

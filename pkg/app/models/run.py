"""
Run ledger models: one row per tuning run, one row per evaluation.
"""

import json
from typing import Any, Dict, List, Mapping, Optional

from sqlalchemy import Boolean, Column, DateTime, Float, ForeignKey, Integer, String, Text
from sqlalchemy.orm import Session, relationship
from sqlalchemy.sql import func

from app.core.database import Base


class TuningRun(Base):
    """A finished tune / baseline / grid-mixed run."""

    __tablename__ = "tuning_runs"

    id = Column(Integer, primary_key=True, index=True)
    command = Column(String(50), nullable=False)
    method = Column(String(50), nullable=False)
    corpus_path = Column(Text, nullable=True)
    seed = Column(Integer, nullable=True)
    best_value = Column(Float, nullable=False)
    best_params = Column(Text, nullable=False)  # JSON object
    evaluations = Column(Integer, nullable=False)
    objective_seconds = Column(Float, nullable=False, default=0.0)
    model_seconds = Column(Float, nullable=False, default=0.0)
    wall_seconds = Column(Float, nullable=False, default=0.0)

    created_at = Column(DateTime(timezone=True), server_default=func.now())

    observations = relationship(
        "TuningObservation",
        back_populates="run",
        cascade="all, delete-orphan",
        order_by="TuningObservation.iteration",
    )

    def __repr__(self) -> str:
        return f"<TuningRun(id={self.id}, method={self.method}, best={self.best_value})>"

    @classmethod
    def record(
        cls,
        db: Session,
        command: str,
        method: str,
        best_value: float,
        best_params: Mapping[str, Any],
        observations: List[Dict[str, Any]],
        corpus_path: Optional[str] = None,
        seed: Optional[int] = None,
        objective_seconds: float = 0.0,
        model_seconds: float = 0.0,
        wall_seconds: float = 0.0,
    ) -> "TuningRun":
        """Store a run and its evaluations in one transaction."""
        run = cls(
            command=command,
            method=method,
            corpus_path=corpus_path,
            seed=seed,
            best_value=best_value,
            best_params=json.dumps(dict(best_params), sort_keys=True),
            evaluations=len(observations),
            objective_seconds=objective_seconds,
            model_seconds=model_seconds,
            wall_seconds=wall_seconds,
        )
        run.observations = [TuningObservation(**row) for row in observations]
        db.add(run)
        db.commit()
        db.refresh(run)
        return run

    @classmethod
    def recent(cls, db: Session, limit: int = 10) -> List["TuningRun"]:
        """Most recent runs first."""
        return db.query(cls).order_by(cls.id.desc()).limit(limit).all()

    def get_best_params(self) -> Dict[str, Any]:
        try:
            return json.loads(self.best_params)
        except (TypeError, json.JSONDecodeError):
            return {}

    def get_summary(self) -> Dict[str, Any]:
        return {
            "id": self.id,
            "command": self.command,
            "method": self.method,
            "corpus": self.corpus_path,
            "seed": self.seed,
            "best_value": self.best_value,
            "best_params": self.get_best_params(),
            "evaluations": self.evaluations,
            "wall_seconds": self.wall_seconds,
            "created_at": self.created_at,
        }


class TuningObservation(Base):
    """One objective evaluation of a run."""

    __tablename__ = "tuning_observations"

    id = Column(Integer, primary_key=True, index=True)
    run_id = Column(Integer, ForeignKey("tuning_runs.id"), nullable=False, index=True)
    iteration = Column(Integer, nullable=False)
    t = Column(Float, nullable=False)
    g = Column(Integer, nullable=False)
    k = Column(Integer, nullable=False)
    objective = Column(Float, nullable=False)
    is_incumbent = Column(Boolean, default=False)

    run = relationship("TuningRun", back_populates="observations")

    def __repr__(self) -> str:
        return f"<TuningObservation(iter={self.iteration}, objective={self.objective})>"

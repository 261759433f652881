//! Baseline heuristics compared against NSGA-II.

pub mod knapsack;
pub mod pagerank;

pub use knapsack::{budget_grid, knapsack_front, KnapsackPlanner};
pub use pagerank::{
    pagerank_constructive, rank_segments, weighted_pagerank, ConstructiveResult, PageRank, PrGraph, TraceStep,
};

//! Intraprocedural control-flow graphs.
//!
//! Each function body becomes a graph of basic blocks holding statement
//! references in execution order. Block 0 is the entry and block 1 the
//! synthetic exit; `return` and `revert` statements edge straight to the
//! exit. Branch statements (`if`, `while`, `do`/`while`, `for`) live in the
//! block that evaluates their condition, so guard conditions have a graph
//! position that dominance queries can use.
//!
//! The graph is deliberately coarse: conditions are never evaluated, so both
//! branch edges always exist, and loops always have a `LoopExit` edge. That
//! makes reachability an over-approximation — exactly what order-sensitive
//! detectors need to stay conservative.

use crate::ast::*;
use crate::span::Span;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct BlockId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct StmtId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum EdgeKind {
    /// Unconditional fall-through.
    Seq,
    /// Condition held.
    TrueBranch,
    /// Condition failed (or `if` without `else` skipped its branch).
    FalseBranch,
    /// Back edge from a loop body to its condition.
    LoopBack,
    /// Loop condition failed; execution continues after the loop.
    LoopExit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub from: BlockId,
    pub to: BlockId,
    pub kind: EdgeKind,
}

#[derive(Debug, Clone)]
pub struct Cfg {
    /// Statements of each block, in execution order, indexed by `BlockId`.
    pub blocks: Vec<Vec<StmtId>>,
    pub edges: Vec<Edge>,
    pub entry: BlockId,
    pub exit: BlockId,
    /// Blocks not reachable from the entry.
    pub dead: BTreeSet<BlockId>,
    /// Source span of each statement, indexed by `StmtId`.
    pub stmt_spans: Vec<Span>,
    /// Block and in-block position of each statement, indexed by `StmtId`.
    pub stmt_blocks: Vec<(BlockId, usize)>,
    span_to_stmt: BTreeMap<Span, StmtId>,
}

impl Cfg {
    pub fn stmt_for_span(&self, span: Span) -> Option<StmtId> {
        self.span_to_stmt.get(&span).copied()
    }

    pub fn successors(&self, block: BlockId) -> impl Iterator<Item = BlockId> + '_ {
        self.edges.iter().filter(move |e| e.from == block).map(|e| e.to)
    }

    /// Blocks reachable from `block` by following at least one edge.
    /// `block` itself is included exactly when a cycle runs through it.
    pub fn reachable_from(&self, block: BlockId) -> BTreeSet<BlockId> {
        let mut seen = BTreeSet::new();
        let mut queue: VecDeque<BlockId> = self.successors(block).collect();
        while let Some(b) = queue.pop_front() {
            if seen.insert(b) {
                queue.extend(self.successors(b));
            }
        }
        seen
    }

    pub fn in_cycle(&self, block: BlockId) -> bool {
        self.reachable_from(block).contains(&block)
    }

    /// Dominator sets, indexed by `BlockId`. A block unreachable from the
    /// entry dominates only itself.
    pub fn dominators(&self) -> Vec<BTreeSet<BlockId>> {
        let n = self.blocks.len();
        let reachable: BTreeSet<BlockId> = {
            let mut r = self.reachable_from(self.entry);
            r.insert(self.entry);
            r
        };
        let all: BTreeSet<BlockId> = reachable.iter().copied().collect();
        let mut dom: Vec<BTreeSet<BlockId>> = (0..n)
            .map(|i| {
                let b = BlockId(i);
                if b == self.entry {
                    BTreeSet::from([b])
                } else if reachable.contains(&b) {
                    all.clone()
                } else {
                    BTreeSet::from([b])
                }
            })
            .collect();
        let preds: Vec<Vec<BlockId>> = (0..n)
            .map(|i| {
                self.edges
                    .iter()
                    .filter(|e| e.to == BlockId(i) && reachable.contains(&e.from))
                    .map(|e| e.from)
                    .collect()
            })
            .collect();
        let mut changed = true;
        while changed {
            changed = false;
            for i in 0..n {
                let b = BlockId(i);
                if b == self.entry || !reachable.contains(&b) {
                    continue;
                }
                let mut next: Option<BTreeSet<BlockId>> = None;
                for p in &preds[i] {
                    next = Some(match next {
                        None => dom[p.0].clone(),
                        Some(acc) => acc.intersection(&dom[p.0]).copied().collect(),
                    });
                }
                let mut next = next.unwrap_or_default();
                next.insert(b);
                if next != dom[i] {
                    dom[i] = next;
                    changed = true;
                }
            }
        }
        dom
    }

    /// Whether execution can reach `later` after executing `first`. True for
    /// a later position in the same block, or when `later`'s block is
    /// reachable from `first`'s (loop back edges count, so two statements in
    /// one loop body may follow each other in both orders).
    pub fn may_follow(&self, first: StmtId, later: StmtId) -> bool {
        let (fb, fp) = self.stmt_blocks[first.0];
        let (lb, lp) = self.stmt_blocks[later.0];
        if fb == lb && lp > fp {
            return true;
        }
        self.reachable_from(fb).contains(&lb)
    }
}

/// Build the CFG for a function. Returns `None` for bodyless declarations.
pub fn build_cfg(func: &FunctionDef) -> Option<Cfg> {
    func.body.as_ref().map(build_cfg_for_block)
}

/// Build a CFG directly from a block (used for function bodies; exposed for
/// tests and any future modifier-body analysis).
pub fn build_cfg_for_block(body: &Block) -> Cfg {
    let mut b = Builder {
        blocks: vec![Vec::new(), Vec::new()],
        edges: Vec::new(),
        stmt_spans: Vec::new(),
        stmt_blocks: Vec::new(),
        span_to_stmt: BTreeMap::new(),
        current: Some(BlockId(0)),
    };
    for stmt in &body.statements {
        b.lower(stmt);
    }
    if let Some(out) = b.current {
        b.edge(out, BlockId(1), EdgeKind::Seq);
    }
    let mut cfg = Cfg {
        blocks: b.blocks,
        edges: b.edges,
        entry: BlockId(0),
        exit: BlockId(1),
        dead: BTreeSet::new(),
        stmt_spans: b.stmt_spans,
        stmt_blocks: b.stmt_blocks,
        span_to_stmt: b.span_to_stmt,
    };
    let mut live = cfg.reachable_from(cfg.entry);
    live.insert(cfg.entry);
    cfg.dead = (0..cfg.blocks.len())
        .map(BlockId)
        .filter(|b| !live.contains(b))
        .collect();
    cfg
}

struct Builder {
    blocks: Vec<Vec<StmtId>>,
    edges: Vec<Edge>,
    stmt_spans: Vec<Span>,
    stmt_blocks: Vec<(BlockId, usize)>,
    span_to_stmt: BTreeMap<Span, StmtId>,
    /// `None` after a `return`/`revert`: nothing falls through.
    current: Option<BlockId>,
}

impl Builder {
    fn new_block(&mut self) -> BlockId {
        self.blocks.push(Vec::new());
        BlockId(self.blocks.len() - 1)
    }

    fn edge(&mut self, from: BlockId, to: BlockId, kind: EdgeKind) {
        self.edges.push(Edge { from, to, kind });
    }

    /// Block that will hold the statement about to be appended; code after a
    /// terminator lands in a fresh, unreachable block.
    fn target(&mut self) -> BlockId {
        match self.current {
            Some(b) => b,
            None => {
                let b = self.new_block();
                self.current = Some(b);
                b
            }
        }
    }

    fn append(&mut self, span: Span) -> StmtId {
        let block = self.target();
        let id = StmtId(self.stmt_spans.len());
        self.stmt_spans.push(span);
        self.stmt_blocks.push((block, self.blocks[block.0].len()));
        self.span_to_stmt.insert(span, id);
        self.blocks[block.0].push(id);
        id
    }

    /// Block evaluating a branch condition: reuse the current block when it
    /// is still empty, otherwise start a new one.
    fn cond_block(&mut self) -> BlockId {
        let cur = self.target();
        if self.blocks[cur.0].is_empty() {
            cur
        } else {
            let next = self.new_block();
            self.edge(cur, next, EdgeKind::Seq);
            self.current = Some(next);
            next
        }
    }

    fn lower(&mut self, stmt: &Statement) {
        match stmt {
            Statement::Block(block) | Statement::Unchecked { block, .. } => {
                for s in &block.statements {
                    self.lower(s);
                }
            }
            Statement::If { then_branch, else_branch, span, .. } => {
                let cond = self.cond_block();
                self.append(*span);

                let then_block = self.new_block();
                self.edge(cond, then_block, EdgeKind::TrueBranch);
                self.current = Some(then_block);
                self.lower(then_branch);
                let then_out = self.current;

                match else_branch {
                    Some(els) => {
                        let else_block = self.new_block();
                        self.edge(cond, else_block, EdgeKind::FalseBranch);
                        self.current = Some(else_block);
                        self.lower(els);
                        let else_out = self.current;
                        if then_out.is_none() && else_out.is_none() {
                            self.current = None;
                        } else {
                            let join = self.new_block();
                            if let Some(o) = then_out {
                                self.edge(o, join, EdgeKind::Seq);
                            }
                            if let Some(o) = else_out {
                                self.edge(o, join, EdgeKind::Seq);
                            }
                            self.current = Some(join);
                        }
                    }
                    None => {
                        let join = self.new_block();
                        self.edge(cond, join, EdgeKind::FalseBranch);
                        if let Some(o) = then_out {
                            self.edge(o, join, EdgeKind::Seq);
                        }
                        self.current = Some(join);
                    }
                }
            }
            Statement::While { body, span, .. } => {
                let cond = self.cond_block();
                self.append(*span);
                let body_block = self.new_block();
                self.edge(cond, body_block, EdgeKind::TrueBranch);
                self.current = Some(body_block);
                self.lower(body);
                if let Some(o) = self.current {
                    self.edge(o, cond, EdgeKind::LoopBack);
                }
                let after = self.new_block();
                self.edge(cond, after, EdgeKind::LoopExit);
                self.current = Some(after);
            }
            Statement::DoWhile { body, span, .. } => {
                let entry = self.target();
                let body_block = self.new_block();
                self.edge(entry, body_block, EdgeKind::Seq);
                self.current = Some(body_block);
                self.lower(body);
                let cond = self.new_block();
                if let Some(o) = self.current {
                    self.edge(o, cond, EdgeKind::Seq);
                }
                self.current = Some(cond);
                self.append(*span);
                self.edge(cond, body_block, EdgeKind::LoopBack);
                let after = self.new_block();
                self.edge(cond, after, EdgeKind::LoopExit);
                self.current = Some(after);
            }
            Statement::For { init, body, span, .. } => {
                if let Some(i) = init {
                    self.lower(i);
                }
                let cond = self.cond_block();
                // The `for` statement stands for its condition and update.
                self.append(*span);
                let body_block = self.new_block();
                self.edge(cond, body_block, EdgeKind::TrueBranch);
                self.current = Some(body_block);
                self.lower(body);
                if let Some(o) = self.current {
                    self.edge(o, cond, EdgeKind::LoopBack);
                }
                let after = self.new_block();
                self.edge(cond, after, EdgeKind::LoopExit);
                self.current = Some(after);
            }
            Statement::Return { span, .. } | Statement::Revert { span, .. } => {
                self.append(*span);
                let from = self.target();
                self.edge(from, BlockId(1), EdgeKind::Seq);
                self.current = None;
            }
            Statement::Expression { span, .. }
            | Statement::VariableDeclaration { span, .. }
            | Statement::Emit { span, .. }
            | Statement::Assembly { span, .. }
            | Statement::Placeholder { span, .. } => {
                self.append(*span);
            }
        }
    }
}

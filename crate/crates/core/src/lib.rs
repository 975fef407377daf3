pub mod poly;
pub mod diagram;
pub mod conway;
pub mod kauffman;
pub mod supersig;
pub mod catalog;
pub mod algsearch;
pub mod registry;

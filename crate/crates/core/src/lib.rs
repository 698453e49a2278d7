pub mod algebra;
pub mod cech;
pub mod cli;
pub mod complexes;
pub mod cyclic;
pub mod exact;
pub mod site;
